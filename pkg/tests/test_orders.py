import itertools
import math
import random
from fractions import Fraction

import pytest

from unitary_complex.errors import CapacityError, DomainError, NotInjectiveError
from unitary_complex.multfunc import MultiplicativeFunction, builtin
from unitary_complex.orders import (
    CoverPoset,
    Infeasible,
    TotalOrder,
    WeightVector,
    _constraint_rows,
    check_nord_bound,
    coherence_witness,
    count_linear_extensions,
    face_label,
    face_of,
    find_termorder_violation,
    induced_order,
    is_boolean_termorder,
    is_sorted_order,
    k_subsets,
    order_from_integers,
    poset_Y,
    realizable_orders,
    restrict_poset,
    verify_impossible_example,
)

F = Fraction


def faces(*labels):
    return tuple(face_of(int(ch) for ch in lab) for lab in labels)


def weight_order(weights, ground):
    return WeightVector(tuple(map(F, weights))).order(ground)


def brute_linear_extensions(P):
    return sum(P.is_linear_extension(p) for p in itertools.permutations(P.elements))


# ---------------------------------------------------------------- poset Y


def test_face_labels():
    assert face_label(face_of([2, 4])) == "24"
    assert face_label(0) == "{}"
    assert face_label(face_of([1, 10])) == "{1,10}"


def test_poset_Y_examples():
    assert len(poset_Y(4)) == 16
    P1 = poset_Y(1)
    assert len(P1) == 2 and P1.less(0, 1) and not P1.less(1, 0)
    Y2 = restrict_poset(poset_Y(4), k_subsets(4, 2))
    a12, a13, a23, a14, a24, a34 = faces("12", "13", "23", "14", "24", "34")
    chain = [(a12, a13), (a13, a23), (a13, a14), (a23, a24), (a14, a24), (a24, a34)]
    assert all(Y2.less(x, y) for x, y in chain)
    assert not Y2.comparable(a23, a14)
    with pytest.raises(DomainError):
        poset_Y(17)
    with pytest.raises(DomainError):
        poset_Y(0)


def test_restrict_singleton_and_chain():
    P = restrict_poset(poset_Y(3), [face_of([2])])
    assert len(P) == 1 and count_linear_extensions(P) == 1
    singles = restrict_poset(poset_Y(5), k_subsets(5, 1))
    assert count_linear_extensions(singles) == 1


def test_linear_extension_counts():
    assert count_linear_extensions(poset_Y(4)) == 78
    assert count_linear_extensions(restrict_poset(poset_Y(4), k_subsets(4, 2))) == 2
    with pytest.raises(CapacityError):
        count_linear_extensions(poset_Y(5))


@pytest.mark.parametrize("r, sizes", [(3, None), (4, (2,)), (4, (1, 3)), (4, (0, 2)), (5, (1, 5)), (5, (4,))])
def test_extension_dp_matches_permutation_count(r, sizes):
    Y = poset_Y(r)
    P = Y if sizes is None else restrict_poset(Y, [m for m in range(1 << r) if bin(m).count("1") in sizes])
    assert count_linear_extensions(P) == brute_linear_extensions(P)


def test_cover_poset_rejects_cycles():
    with pytest.raises(DomainError):
        CoverPoset((1, 2), ((1, 2), (2, 1)))


# ---------------------------------------------------------------- term orders


def test_termorder_examples():
    full = range(16)
    assert is_boolean_termorder(weight_order((1, 2, 4, 8), full))
    seq = weight_order((1, 2, 4, 8), full).sequence
    bad = TotalOrder((seq[1], 0) + seq[2:], 4)
    assert find_termorder_violation(bad)[0] == 0
    assert not is_boolean_termorder(bad)
    # swap 3 = {v1,v2} and 4 = {v3}: then 3|8 = 11 still precedes 4|8 = 12, breaking axiom 2
    order = list(seq)
    i, j = order.index(3), order.index(4)
    order[i], order[j] = order[j], order[i]
    sigma, tau, gamma = find_termorder_violation(TotalOrder(tuple(order), 4))
    pos = {f: k for k, f in enumerate(order)}
    assert pos[sigma] < pos[tau] and pos[sigma | gamma] > pos[tau | gamma]
    assert not (sigma | tau) & gamma
    with pytest.raises(DomainError):
        is_boolean_termorder(TotalOrder((0, 1, 2), 2))


def test_coherent_orders_satisfy_axioms():
    rng = random.Random(9)
    for _ in range(60):
        r = rng.randint(1, 5)
        w = [F(rng.randint(1, 1000), rng.randint(1, 30)) for _ in range(r)]
        try:
            order = weight_order(w, range(1 << r))
        except DomainError:
            continue  # tied subset sums
        assert is_boolean_termorder(order)


def test_sorted_examples():
    assert is_sorted_order(TotalOrder((0, 1), 1))
    assert is_sorted_order(weight_order((1, 2, 3, 4), k_subsets(4, 1)))
    assert not is_sorted_order(weight_order((2, 1, 3, 4), k_subsets(4, 1)))
    with pytest.raises(DomainError):
        is_sorted_order(TotalOrder(faces("1", "12"), 2))


# ---------------------------------------------------------------- coherence


def certificate_is_valid(order, res, sorted_only=False):
    rows, side = _constraint_rows(order.sequence, order.r, sorted_only)
    y = [F(0)] * len(rows)
    k = len(order.sequence) - 1
    pos = order.position()
    for mult, lo, hi in res.certificate:
        assert pos[hi] == pos[lo] + 1
        y[pos[lo]] = mult
    for mult, what in res.side:
        y[k + side.index(what)] = mult
    return all(v >= 0 for v in y) and sum(y) > 0 and all(
        sum(y[i] * rows[i][j] for i in range(len(rows))) == 0 for j in range(order.r)
    )


def test_impossible_order():
    order = order_from_integers([35, 14, 15, 10, 21, 6], vertices=(2, 3, 5, 7))
    res = coherence_witness(order)
    assert isinstance(res, Infeasible) and not res
    assert certificate_is_valid(order, res)
    (a, b), (c, d) = res.contradiction
    pos = order.position()
    assert pos[a] < pos[b] and pos[c] < pos[d]
    diff = lambda x, y: [((y >> i) & 1) - ((x >> i) & 1) for i in range(4)]
    assert diff(a, b) == [-v for v in diff(c, d)]
    rep = verify_impossible_example()
    assert rep.infeasible and "INFEASIBLE" in rep.describe()


def test_witness_reproduces_order():
    T = k_subsets(4, 2)
    order = weight_order((1, 2, 4, 8), range(16))
    w = coherence_witness(order)
    assert isinstance(w, WeightVector) and w.order(range(16)) == order
    fig = TotalOrder(faces("12", "13", "23", "14", "24", "34"), 4)
    w = coherence_witness(fig, sorted_only=True)
    assert w.order(T) == fig
    assert list(w.weights) == sorted(w.weights)
    assert weight_order((1, 2, 3, 5), T) == fig


def test_impossible_sanity_inverses():
    ordered = weight_order((1, 2, 3, 5), k_subsets(4, 2))
    assert coherence_witness(ordered)
    seq = list(ordered.sequence)
    i, j = seq.index(face_of([2, 3])), seq.index(face_of([1, 4]))
    seq[i], seq[j] = seq[j], seq[i]
    assert coherence_witness(TotalOrder(tuple(seq), 4))


def test_sorted_constraint_can_fail():
    order = weight_order((2, 1, 3), k_subsets(3, 1))
    assert coherence_witness(order)
    res = coherence_witness(order, sorted_only=True)
    assert not res and certificate_is_valid(order, res, sorted_only=True)


# ---------------------------------------------------------------- induced orders


def test_induced_order_examples():
    T = [6, 10, 14, 15, 21, 35]
    order = induced_order(T, builtin("identity"))
    assert order.values() == [6, 10, 14, 15, 21, 35]
    assert induced_order([7], builtin("identity")).values() == [7]
    with pytest.raises(NotInjectiveError) as err:
        induced_order([6, 10, 15], builtin("two_omega"))
    assert set(err.value.pair) <= {6, 10, 15}
    with pytest.raises(DomainError):
        induced_order([2, 3], MultiplicativeFunction({2: 1, 3: 5}))


def test_order_from_integers():
    o = order_from_integers([35, 6, 10])
    assert o.labels == (2, 3, 5, 7) and o.values() == [35, 6, 10]
    with pytest.raises(DomainError):
        order_from_integers([6, 6])
    with pytest.raises(DomainError):
        order_from_integers([6, 11], vertices=(2, 3, 5))


# ---------------------------------------------------------------- enumeration


def test_realizable_counts():
    T = k_subsets(4, 2)
    assert len(realizable_orders(T, sorted_only=True, r=4)) == 2
    assert len(realizable_orders(T, r=4)) == 48
    assert len(realizable_orders([face_of([1, 2])], r=2)) == 1
    with pytest.raises(CapacityError):
        realizable_orders(list(range(8)), r=3)


def test_soundness():
    for T, r in ((k_subsets(4, 2), 4), (list(range(1, 8)), 3), (k_subsets(4, 1) + [face_of([1, 4])], 4)):
        labels = (2, 3, 5, 7)[:r]
        for order in realizable_orders(T, r=r):
            w = coherence_witness(order)
            g = w.to_function(labels)
            ints = [math.prod(labels[i] for i in range(r) if f >> i & 1) for f in order.sequence]
            assert induced_order(ints, g, vertices=labels).sequence == order.sequence


def test_completeness_by_sampling_r3():
    rng = random.Random(2024)
    T = list(range(1, 8))
    labels = (2, 3, 5)
    ints = [math.prod(labels[i] for i in range(3) if f >> i & 1) for f in T]
    enumerated = {o.sequence for o in realizable_orders(T, r=3)}
    sampled = set()
    for _ in range(10_000):
        g = MultiplicativeFunction({q: 1 + F(rng.randint(1, 10**6), 10**5) for q in labels})
        try:
            sampled.add(induced_order(ints, g, vertices=labels).sequence)
        except NotInjectiveError:
            continue
    assert sampled <= enumerated
    for seq in enumerated - sampled:
        assert coherence_witness(TotalOrder(seq, 3))


def test_sorted_orders_are_linear_extensions():
    for T, r in ((k_subsets(4, 2), 4), (list(range(1, 8)), 3), (k_subsets(4, 1) + k_subsets(4, 3)[:3], 4)):
        Y_T = restrict_poset(poset_Y(r), T)
        sorted_orders = realizable_orders(T, sorted_only=True, r=r)
        assert sorted_orders
        for order in sorted_orders:
            assert Y_T.is_linear_extension(order.sequence)
            if all(1 << i in T for i in range(r)):
                assert is_sorted_order(order)


def test_partition_count():
    for T, r in ((k_subsets(4, 2), 4), (list(range(1, 8)), 3)):
        s = len(realizable_orders(T, sorted_only=True, r=r))
        t = len(realizable_orders(T, r=r))
        assert s * math.factorial(r) >= t
    assert 2 * 24 == len(realizable_orders(k_subsets(4, 2), r=4))


def test_nord_bound():
    res = check_nord_bound(k_subsets(4, 2), 4)
    assert tuple(res[:3]) == (48, 48, True)
    assert tuple(check_nord_bound([face_of([2])], 3)[:3]) == (1, 6, True)
    assert tuple(check_nord_bound(k_subsets(3, 1), 3)[:3]) == (6, 6, True)
