import itertools
import random
from math import factorial

import pytest

from gradingforge.wreath import (
    ConjType,
    GroupAction,
    Groupoid,
    WreathElement,
    all_wreath_elements,
    conj_type,
    disjoint_union,
    groupoid_from_group,
    invariant_groupoid,
    lambda_at,
    semidirect_groupoid,
    transporter,
)

TRIVIAL = [[0]]
C2 = [[0, 1], [1, 0]]
C3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
C4 = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]
V4 = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
# symmetric group on 3 letters: elements e,(12),(13),(23),(123),(132)
S3 = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 4, 5, 2, 3],
    [2, 5, 0, 4, 3, 1],
    [3, 4, 5, 0, 1, 2],
    [4, 3, 1, 2, 5, 0],
    [5, 2, 3, 1, 0, 4],
]

GROUPS = {"1": TRIVIAL, "C2": C2, "C3": C3, "C4": C4, "V4": V4, "S3": S3}


def brute_transporter(C, rho, sigma):
    return [a for a in all_wreath_elements(C) if a * rho == sigma * a]


def centralizer_formula(C, rho):
    """Thm: prod over (k, class) of c! * (k * #C_C(gamma))^c."""
    counts = {}
    reps = {}
    for orb in rho.orbits():
        lam = lambda_at(rho, orb[0])
        label = C.conj_label(lam)
        counts[(len(orb), label)] = counts.get((len(orb), label), 0) + 1
        reps[(len(orb), label)] = (orb[0], lam)
    total = 1
    for (k, label), c in counts.items():
        K, lam = reps[(k, label)]
        cent = sum(
            1 for a in C.hom.get((K, K), ())
            if C.compose(a, lam) == C.compose(lam, a)
        )
        total *= factorial(c) * (k * cent) ** c
    return total


def random_groupoid(rng, max_objects=4, max_aut=6):
    """Random disjoint union of connected group-based groupoids."""
    names = [n for n, t in GROUPS.items() if len(t) <= max_aut]
    pieces = []
    remaining = rng.randint(1, max_objects)
    while remaining > 0:
        take = rng.randint(1, remaining)
        grp = GROUPS[rng.choice(names)]
        pieces.append(groupoid_from_group(grp, take))
        remaining -= take
    return disjoint_union(pieces)


def random_wreath_element(rng, C):
    elems = all_wreath_elements(C)
    return elems[rng.randrange(len(elems))]


class TestWreathArithmetic:
    def test_compose_inverse_roundtrip(self):
        C = groupoid_from_group(C2, 2)
        rng = random.Random(1)
        for _ in range(20):
            s = random_wreath_element(rng, C)
            assert (s * s.inverse()).is_identity()
            assert (s.inverse() * s).is_identity()

    def test_trivial_aut_wreath_is_symmetric_group(self):
        C = groupoid_from_group(TRIVIAL, 3)
        elems = all_wreath_elements(C)
        assert len(elems) == 6
        perms = sorted(e.perm for e in elems)
        assert perms == sorted(itertools.permutations(range(3)))
        # composition matches permutation composition
        rng = random.Random(2)
        for _ in range(10):
            a = random_wreath_element(rng, C)
            b = random_wreath_element(rng, C)
            ab = a * b
            assert ab.perm == tuple(a.perm[b.perm[k]] for k in range(3))

    def test_antihomomorphism_of_inverse(self):
        C = groupoid_from_group(C2, 2)
        rng = random.Random(3)
        for _ in range(15):
            s = random_wreath_element(rng, C)
            r = random_wreath_element(rng, C)
            assert (s * r).inverse() == r.inverse() * s.inverse()

    def test_group_axioms_exhaustive_small(self):
        C = groupoid_from_group(C2, 2)
        elems = all_wreath_elements(C)
        assert len(elems) == 8  # 2 perms * 2^2 components
        ident = WreathElement.identity(C)
        for a in elems:
            assert a * ident == a and ident * a == a
        for a in elems[:4]:
            for b in elems[:4]:
                for c in elems[:4]:
                    assert (a * b) * c == a * (b * c)


class TestLambda:
    def test_identity(self):
        C = groupoid_from_group(C4, 2)
        ident = WreathElement.identity(C)
        for k in range(2):
            assert lambda_at(ident, k) == C.identity[k]

    def test_single_object(self):
        C = groupoid_from_group(C4, 1)
        g = C.group_handle[(0, 0, 1)]
        s = WreathElement(C, (0,), (g,))
        assert lambda_at(s, 0) == g

    def test_three_cycle_product(self):
        C = groupoid_from_group(C4, 3)
        # sigma: 0->1->2->0 with components f0 = g^1, f1 = g^2, f2 = g^3
        comps = (
            C.group_handle[(0, 1, 1)],
            C.group_handle[(1, 2, 2)],
            C.group_handle[(2, 0, 3)],
        )
        s = WreathElement(C, (1, 2, 0), comps)
        lam = lambda_at(s, 0)
        # f2 o f1 o f0 = g^(3+2+1) = g^2 (mod 4)
        assert lam == C.group_handle[(0, 0, 2)]


class TestConjType:
    def test_identity_type(self):
        C = groupoid_from_group(C2, 3)
        t = conj_type(WreathElement.identity(C))
        assert len(t) == 3
        assert all(k == 1 for k, _ in t.entries)

    def test_trivial_aut_type_is_cycle_type(self):
        C = groupoid_from_group(TRIVIAL, 3)
        elems = all_wreath_elements(C)
        for a in elems:
            for b in elems:
                same_cycle = sorted(len(o) for o in a.orbits()) == \
                             sorted(len(o) for o in b.orbits())
                conjugate = bool(transporter(C, None, a, b))
                assert conjugate == same_cycle

    def test_conjugation_invariance(self):
        C = groupoid_from_group(C4, 2)
        rng = random.Random(5)
        for _ in range(25):
            rho = random_wreath_element(rng, C)
            alpha = random_wreath_element(rng, C)
            conj = alpha * rho * alpha.inverse()
            assert conj_type(conj) == conj_type(rho)

    def test_order_two_label_of_swap(self):
        C = groupoid_from_group(C4, 2)
        # swap with lambda of order 2: comps g^1 then g^1 -> lambda = g^2
        comps = (C.group_handle[(0, 1, 1)], C.group_handle[(1, 0, 1)])
        s = WreathElement(C, (1, 0), comps)
        t = conj_type(s)
        assert len(t) == 1
        (k, label), = t.entries
        assert k == 2
        assert label == C.conj_label(C.group_handle[(0, 0, 2)])


class TestTransporter:
    def test_identity_transporter_is_whole_wreath(self):
        C = groupoid_from_group(C2, 2)
        ident = WreathElement.identity(C)
        got = transporter(C, None, ident, ident)
        assert sorted(w.key() for w in got) == \
            sorted(w.key() for w in all_wreath_elements(C))

    def test_different_cycle_types_empty(self):
        C = groupoid_from_group(TRIVIAL, 3)
        a = WreathElement(C, (1, 0, 2), [C.group_handle[(0, 1, 0)],
                                         C.group_handle[(1, 0, 0)],
                                         C.group_handle[(2, 2, 0)]])
        b = WreathElement.identity(C)
        assert transporter(C, None, a, b) == []

    def test_oracle_equivalence_random(self):
        rng = random.Random(7)
        for trial in range(60):
            C = random_groupoid(rng, max_objects=3, max_aut=4)
            rho = random_wreath_element(rng, C)
            sigma = random_wreath_element(rng, C)
            got = transporter(C, None, rho, sigma)
            expect = brute_transporter(C, rho, sigma)
            assert sorted(w.key() for w in got) == sorted(w.key() for w in expect)

    def test_centralizer_count_formula(self):
        rng = random.Random(9)
        for trial in range(40):
            C = random_groupoid(rng, max_objects=3, max_aut=6)
            rho = random_wreath_element(rng, C)
            got = transporter(C, None, rho, rho)
            assert len(got) == centralizer_formula(C, rho)

    def test_nonempty_iff_same_type(self):
        rng = random.Random(11)
        for trial in range(40):
            C = random_groupoid(rng, max_objects=3, max_aut=4)
            rho = random_wreath_element(rng, C)
            sigma = random_wreath_element(rng, C)
            nonempty = bool(transporter(C, None, rho, sigma))
            assert nonempty == (conj_type(rho) == conj_type(sigma))

    def test_wide_subgroupoid_restriction(self):
        # D = trivial-automorphism wide subgroupoid of a C2-groupoid
        C = groupoid_from_group(C2, 2)
        D_handles = {h for h, (i, j, g) in C.group_triple.items() if g == 0}
        rho = WreathElement.identity(C)
        got = transporter(C, D_handles, rho, rho)
        assert all(all(h in D_handles for h in w.comps) for w in got)
        expect = [w for w in brute_transporter(C, rho, rho)
                  if all(h in D_handles for h in w.comps)]
        assert sorted(w.key() for w in got) == sorted(w.key() for w in expect)


class TestSemidirect:
    def test_trivial_group_gives_same_homs(self):
        C = groupoid_from_group(C2, 2)
        act = GroupAction.trivial(C)
        D, embed, tau, gamma_of = semidirect_groupoid(C, act)
        assert D.n_objects == C.n_objects
        for (i, j), hs in C.hom.items():
            assert len(D.hom[(i, j)]) == len(hs)

    def test_one_object_trivial_action_direct_product(self):
        C = groupoid_from_group(C2, 1)
        act = GroupAction.trivial(C, modulus=4, elements=(1, 3))
        act.obj_perm[3] = (0,)
        act.morph_perm[3] = {h: h for h in C.src}
        D, embed, tau, gamma_of = semidirect_groupoid(C, act)
        assert len(D.hom[(0, 0)]) == 4  # |C2| * |{1,3}|

    def test_conjugation_by_tau_matches_action(self):
        C = groupoid_from_group(C4, 1)
        # action of (Z/4)^* = {1,3}: 3 inverts the C4 automorphism group
        morph3 = {}
        for h, (i, j, g) in C.group_triple.items():
            morph3[h] = C.group_handle[(i, j, (-g) % 4)]
        act = GroupAction(C, 4, (1, 3),
                          {1: (0,), 3: (0,)},
                          {1: {h: h for h in C.src}, 3: morph3})
        act.validate()
        D, embed, tau, gamma_of = semidirect_groupoid(C, act)
        from gradingforge.wreath import embed_wreath
        g = C.group_handle[(0, 0, 1)]
        sig = WreathElement(C, (0,), (g,))
        lhs = tau[3] * embed_wreath(sig, D, embed) * tau[3].inverse()
        rhs = embed_wreath(act.act_element(3, sig), D, embed)
        assert lhs == rhs

    def test_gamma_separation(self):
        # wreath(D)-conjugacy preserves the group component
        C = groupoid_from_group(C2, 1)
        act = GroupAction.trivial(C, modulus=3, elements=(1, 2))
        act.obj_perm[2] = (0,)
        act.morph_perm[2] = {h: h for h in C.src}
        D, embed, tau, gamma_of = semidirect_groupoid(C, act)
        s1 = tau[1]
        s2 = tau[2]
        # transporter over embedded C between tau_1 and tau_2 must be empty
        D_handles = set(embed.values())
        assert transporter(D, D_handles, s2, s1) == []


class TestInvariantGroupoid:
    def test_trivial_action_recovers_groupoid(self):
        C = groupoid_from_group(C2, 2)
        act = GroupAction.trivial(C)
        inv, orbits, fam_of = invariant_groupoid(C, act)
        assert inv.n_objects == 2
        assert all(len(inv.hom[(i, j)]) == 2 for i in range(2) for j in range(2))

    def test_free_orbit_enumeration(self):
        # two objects swapped freely by the action: the equivariant families
        # from the orbit to itself are determined by the anchor component, so
        # there are sum_L #Hom(K0, L) = 4 of them.  Cross-check against the
        # identity wreath(C^Gamma) = wreath(C)^Gamma by direct enumeration.
        C = groupoid_from_group(C2, 2)
        swap_obj = (1, 0)
        morph = {}
        for h, (i, j, g) in C.group_triple.items():
            morph[h] = C.group_handle[(swap_obj[i], swap_obj[j], g)]
        act = GroupAction(C, 3, (1, 2),
                          {1: (0, 1), 2: swap_obj},
                          {1: {h: h for h in C.src}, 2: morph})
        act.validate()
        inv, orbits, fam_of = invariant_groupoid(C, act)
        assert inv.n_objects == 1
        fixed = [w for w in all_wreath_elements(C)
                 if act.act_element(2, w) == w]
        assert len(inv.hom[(0, 0)]) == len(fixed) == 4
