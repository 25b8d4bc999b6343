import pytest

from commonforest.embed import contains_induced
from commonforest.errors import InvalidInstance
from commonforest.forest import Forest, components, tree_canonical
from commonforest.generators import (
    ThreeDmInstance,
    ThreePartitionInstance,
    caterpillar,
    gen_prop1,
    gen_thm1,
    gen_tightness,
)
from commonforest.verify import check_embedding


class TestCaterpillar:
    def test_t11_is_p4(self):
        cat = caterpillar([1, 1])
        assert tree_canonical(cat.tree) == tree_canonical(Forest.path(4))

    def test_order_formula(self):
        cat = caterpillar([0, 2, 3, 3, 1, 0])
        assert cat.tree.n == 6 + 9
        assert cat.spine == (0, 1, 2, 3, 4, 5)

    def test_single_vertex(self):
        assert caterpillar([0]).tree.n == 1

    def test_rejects_negative(self):
        with pytest.raises(InvalidInstance):
            caterpillar([1, -1])

    def test_rejects_empty(self):
        with pytest.raises(InvalidInstance):
            caterpillar([])


class TestTightness:
    def test_small_orders_and_containment(self):
        fam = gen_tightness(3, 2, 1)
        assert [t.n for t in fam.trees] == [15, 17, 21]
        assert fam.known_supertree.n == 29
        for t, emb in zip(fam.trees, fam.embeddings):
            assert check_embedding(t, fam.known_supertree, emb)
        # cross-check the aligned embeddings against the generic search
        for t in fam.trees:
            assert contains_induced(t, fam.known_supertree) is not None

    def test_large_orders(self):
        fam = gen_tightness(100, 2, 1)
        assert [t.n for t in fam.trees] == [209, 211, 215]
        assert fam.known_supertree.n == 320
        for t, emb in zip(fam.trees, fam.embeddings):
            assert check_embedding(t, fam.known_supertree, emb)

    def test_invalid_params(self):
        with pytest.raises(InvalidInstance):
            gen_tightness(2, 2, 1)
        with pytest.raises(InvalidInstance):
            gen_tightness(3, 2, 0)
        with pytest.raises(InvalidInstance):
            gen_tightness(3, 1, 2)


class TestProp1:
    def test_m2_instance(self):
        inst = ThreePartitionInstance(2, (2, 2, 3, 2, 2, 3))
        pair = gen_prop1(inst)
        assert pair.t1.n == 15 and pair.t2.n == 19
        assert pair.t1.degree(pair.r1) == 6
        assert pair.t2.degree(pair.r2) == 2
        assert pair.f2.n == pair.f1.n + 2 * inst.m
        # forward certificate of the yes-instance
        emb = contains_induced(pair.f1, pair.f2)
        assert emb is not None
        assert check_embedding(pair.f1, pair.f2, emb)

    def test_non_integral_target(self):
        with pytest.raises(InvalidInstance):
            gen_prop1(ThreePartitionInstance(2, (2, 2, 3, 2, 2, 4)))

    def test_range_violation(self):
        # A = 6 but one value is >= A/2
        with pytest.raises(InvalidInstance):
            gen_prop1(ThreePartitionInstance(1, (1, 1, 4)))

    def test_wrong_count(self):
        with pytest.raises(InvalidInstance):
            gen_prop1(ThreePartitionInstance(2, (2, 2, 3)))

    def test_subdivided_star_shape(self):
        pair = gen_prop1(ThreePartitionInstance(2, (2, 2, 3, 2, 2, 3)))
        # removing the hub leaves exactly the path forest
        rest = [v for v in range(pair.t1.n) if v != pair.r1]
        assert tree_canonical is not None
        comps = components(pair.t1.induced(rest))
        assert sorted(c.n for c in comps) == [2, 2, 2, 2, 3, 3]


class TestThm1:
    def identity_instance(self, q=4):
        return ThreeDmInstance(q, tuple((i, i, i) for i in range(1, q + 1)))

    def test_orders_q4(self):
        trip = gen_thm1(self.identity_instance())
        assert trip.ty.n == 169 and trip.tz.n == 169
        assert trip.tx.degree(trip.rx) == 4
        assert trip.ty.degree(trip.ry) == 4
        assert trip.tz.degree(trip.rz) == 4

    def test_witness_order(self):
        inst = self.identity_instance()
        trip = gen_thm1(inst, matching=inst.triples)
        assert trip.witness is not None and trip.witness.n == 173

    def test_x_in_three_triples_gadget_order(self):
        inst = ThreeDmInstance(
            4,
            (
                (1, 1, 1),
                (1, 2, 2),
                (1, 3, 3),
                (2, 4, 4),
                (3, 1, 2),
                (4, 2, 3),
            ),
        )
        trip = gen_thm1(inst)
        rest = [v for v in range(trip.tx.n) if v != trip.rx]
        gadgets = sorted(c.n for c in components(trip.tx.induced(rest)))
        assert gadgets[0] == 31  # the x in three triples: 6q + 7

    def test_validation(self):
        with pytest.raises(InvalidInstance):
            ThreeDmInstance(2, ((1, 1, 1),)).validate()  # x_2 missing
        with pytest.raises(InvalidInstance):
            ThreeDmInstance(
                1, ((1, 1, 1), (1, 1, 1))
            ).validate()  # duplicate triple
        with pytest.raises(InvalidInstance):
            gen_thm1(
                self.identity_instance(2),
                matching=((1, 1, 1),),
            )  # not perfect

    def test_witness_contains_all_three_small(self):
        inst = self.identity_instance(2)
        trip = gen_thm1(inst, matching=inst.triples)
        assert trip.witness is not None
        for t in (trip.tx, trip.ty, trip.tz):
            assert contains_induced(t, trip.witness) is not None
