"""Solve X_e(C, G) = {sigma in wreath(C) | sigma^e = 1, ^a sigma = sigma^a}.

e is a prime power > 1 and G a subgroup of (Z/eZ)* acting on the groupoid.
The solver follows the four-stage reduction: split into isomorphism
classes, enumerate partitions coarser than the G-orbits, reconstruct from
single-orbit restrictions, and solve the cyclic transitive leaf case with
transporter searches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .wreath import (
    GroupAction,
    Groupoid,
    WreathElement,
    embed_wreath,
    semidirect_groupoid,
    transporter,
)


@dataclass
class XeProblem:
    groupoid: Groupoid
    e: int
    group: tuple          # residues of the subgroup of (Z/eZ)*
    action: GroupAction

    def __post_init__(self):
        p, k = _prime_power(self.e)
        self.prime = p
        self.exponent = k
        self.group = tuple(sorted(set(a % self.e for a in self.group)))
        if 1 % self.e not in self.group:
            raise ValueError("group must contain 1")


def _prime_power(e):
    if e < 2:
        raise ValueError("e must be a prime power > 1")
    p = min(q for q in range(2, e + 1) if e % q == 0)
    k = 0
    m = e
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError("e must be a prime power")
    return p, k


def subgroup_closure(elements, e):
    out = {1 % e}
    frontier = set(a % e for a in elements)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(out) + list(frontier):
                c = a * b % e
                if c not in out and c not in frontier and c not in new:
                    new.add(c)
        out |= frontier
        frontier = new
    return tuple(sorted(out))


def all_subgroups(group, e):
    """All subgroups of an abelian group of residues, by closure growing."""
    subs = {subgroup_closure([], e)}
    changed = True
    while changed:
        changed = False
        for H in list(subs):
            for g in group:
                Hg = subgroup_closure(list(H) + [g], e)
                if set(Hg) <= set(group) and Hg not in subs:
                    subs.add(Hg)
                    changed = True
    return sorted(subs)


def satisfies_relations(problem: XeProblem, sigma: WreathElement) -> bool:
    if not (sigma ** problem.e).is_identity():
        return False
    for a in problem.group:
        if problem.action.act_element(a, sigma) != sigma ** a:
            return False
    return True


def xe_bruteforce(problem: XeProblem):
    """Exhaustive filter oracle; exponential."""
    from .wreath import all_wreath_elements
    out = [s for s in all_wreath_elements(problem.groupoid)
           if satisfies_relations(problem, s)]
    out.sort(key=lambda w: w.key())
    return out


def split_iso_classes(problem: XeProblem):
    """Orbits of wreath(C) x| G on objects, as sorted object tuples."""
    C = problem.groupoid
    n = C.n_objects
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for (i, j), hs in C.hom.items():
        if hs:
            union(i, j)
    for a in problem.group:
        for i in range(n):
            union(i, problem.action.obj_perm[a][i])
    classes = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)
    return [tuple(sorted(v)) for _, v in sorted(classes.items())]


def _restrict(problem: XeProblem, objects):
    """Subproblem on a G-stable object subset; returns maps for lifting."""
    C = problem.groupoid
    sub, obj_to_sub, handle_map, inv_handle = C.full_subgroupoid(objects)
    act = problem.action.restrict_to_subgroupoid(objects, sub, obj_to_sub,
                                                 handle_map)
    subproblem = XeProblem(sub, problem.e, problem.group, act)
    sub_to_obj = {v: k for k, v in obj_to_sub.items()}
    return subproblem, obj_to_sub, sub_to_obj, handle_map, inv_handle


def g_orbits(problem: XeProblem):
    C = problem.groupoid
    n = C.n_objects
    seen = [False] * n
    orbits = []
    for i in range(n):
        if seen[i]:
            continue
        orb = set()
        stack = [i]
        while stack:
            x = stack.pop()
            if x in orb:
                continue
            orb.add(x)
            seen[x] = True
            for a in problem.group:
                stack.append(problem.action.obj_perm[a][x])
        orbits.append(tuple(sorted(orb)))
    return orbits


def set_partitions(items):
    """All partitions of a list, each a tuple of sorted blocks."""
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield ((first,),) + part
        for i, block in enumerate(part):
            yield part[:i] + ((first,) + block,) + part[i + 1:]


def enumerate_partitions(problem: XeProblem):
    """Partitions of the G-orbit set, with blocks as object tuples."""
    orbits = g_orbits(problem)
    out = []
    for part in set_partitions(range(len(orbits))):
        blocks = []
        for idxs in part:
            objs = sorted(o for i in idxs for o in orbits[i])
            blocks.append(tuple(objs))
        out.append(tuple(sorted(blocks)))
    return sorted(set(out))


def xe(problem: XeProblem):
    """Compute X_e(C, G) exactly, deduplicated, in canonical order."""
    C = problem.groupoid
    components = split_iso_classes(problem)
    partials_per_component = []
    for comp in components:
        sub, obj_to_sub, sub_to_obj, hmap, inv_h = _restrict(problem, comp)
        sols = _xe_connected(sub)
        lifted = []
        for s in sols:
            partial = {}
            for k in range(sub.groupoid.n_objects):
                partial[sub_to_obj[k]] = (sub_to_obj[s.perm[k]],
                                          inv_h[s.comps[k]])
            lifted.append(partial)
        partials_per_component.append(lifted)
    out = []
    for combo in itertools.product(*partials_per_component):
        perm = [None] * C.n_objects
        comps = [None] * C.n_objects
        for partial in combo:
            for k, (pk, hk) in partial.items():
                perm[k] = pk
                comps[k] = hk
        out.append(WreathElement(C, perm, comps))
    seen = set()
    unique = []
    for w in sorted(out, key=lambda w: w.key()):
        if w.key() not in seen:
            seen.add(w.key())
            unique.append(w)
    assert len(unique) == len(out), "product across components not disjoint"
    return unique


def _xe_connected(problem: XeProblem):
    """X_e for a component where wreath(C) x| G is transitive on objects."""
    out = []
    seen = set()
    for blocks in enumerate_partitions(problem):
        per_block = []
        for block in blocks:
            sub, obj_to_sub, sub_to_obj, hmap, inv_h = _restrict(problem, block)
            sols = xtilde(sub)
            lifted = []
            for s in sols:
                partial = {}
                for k in range(sub.groupoid.n_objects):
                    partial[sub_to_obj[k]] = (sub_to_obj[s.perm[k]],
                                              inv_h[s.comps[k]])
                lifted.append(partial)
            if not lifted:
                per_block = None
                break
            per_block.append(lifted)
        if per_block is None:
            continue
        for combo in itertools.product(*per_block):
            perm = [None] * problem.groupoid.n_objects
            comps = [None] * problem.groupoid.n_objects
            for partial in combo:
                for k, (pk, hk) in partial.items():
                    perm[k] = pk
                    comps[k] = hk
            w = WreathElement(problem.groupoid, perm, comps)
            assert w.key() not in seen, "partition union not disjoint"
            seen.add(w.key())
            out.append(w)
    out.sort(key=lambda w: w.key())
    return out


def xtilde(problem: XeProblem):
    """Solutions whose <sigma> x| G orbit structure is transitive."""
    C = problem.groupoid
    n = C.n_objects
    orbits = g_orbits(problem)
    # pointwise stabilizers I_O and the group I they generate
    gens = []
    for O in orbits:
        for a in problem.group:
            if all(problem.action.obj_perm[a][y] == y for y in O):
                gens.append(a)
    I = subgroup_closure(gens, problem.e)
    x = 0
    out = []
    seen = set()
    for H in all_subgroups(problem.group, problem.e):
        if not set(I) <= set(H):
            continue
        # blocks P with x in P and P meeting every orbit in an H-orbit
        per_orbit_choices = []
        for O in orbits:
            horbs = _h_orbits(problem, H, O)
            if x in O:
                forced = next(ho for ho in horbs if x in ho)
                per_orbit_choices.append([forced])
            else:
                per_orbit_choices.append(horbs)
        for choice in itertools.product(*per_orbit_choices):
            P = tuple(sorted(o for ho in choice for o in ho))
            sub, obj_to_sub, sub_to_obj, hmap, inv_h = _restrict(
                _with_group(problem, H), P)
            for omega in xhat(sub):
                sigma = transitive_lift(problem, H, P, omega,
                                        sub_to_obj, inv_h)
                assert sigma.key() not in seen, "transitive classes overlap"
                seen.add(sigma.key())
                out.append(sigma)
    out.sort(key=lambda w: w.key())
    return out


def _with_group(problem: XeProblem, H):
    act = problem.action.restrict_elements(H)
    return XeProblem(problem.groupoid, problem.e, H, act)


def _h_orbits(problem, H, O):
    seen = set()
    horbs = []
    for y in O:
        if y in seen:
            continue
        orb = set()
        stack = [y]
        while stack:
            z = stack.pop()
            if z in orb:
                continue
            orb.add(z)
            for a in H:
                stack.append(problem.action.obj_perm[a][z])
        seen |= orb
        horbs.append(tuple(sorted(orb)))
    return horbs


def coset_representatives(group, H, e):
    """Least nonnegative residue representative per coset of H in group."""
    reps = []
    covered = set()
    for g in sorted(group):
        if g in covered:
            continue
        coset = sorted((g * h) % e for h in H)
        reps.append(min(coset))
        covered |= set(coset)
    return reps


def transitive_lift(problem: XeProblem, H, P, omega_partial, sub_to_obj, inv_h):
    """Reconstruct sigma in X~_e(C, G) from omega in X^_e(C|_P, H).

    omega_partial: WreathElement of the subgroupoid on P;
    sub_to_obj/inv_h: maps from the subgroupoid back to C.
    """
    C = problem.groupoid
    e = problem.e
    n = C.n_objects
    reps = coset_representatives(problem.group, H, e)
    # omega in C-terms per power a (computed in the subgroupoid, mapped back)
    sub = omega_partial.groupoid
    obj_to_sub = {v: k for k, v in sub_to_obj.items()}

    def omega_power_c(a):
        w = omega_partial ** a
        return {sub_to_obj[k]: (sub_to_obj[w.perm[k]], inv_h[w.comps[k]])
                for k in range(sub.n_objects)}

    cache = {}
    perm = [None] * n
    comps = [None] * n
    for y in range(n):
        a = next(r for r in reps
                 if problem.action.obj_perm[r][y] in obj_to_sub)
        z = problem.action.obj_perm[a][y]
        if a not in cache:
            cache[a] = omega_power_c(a)
        oz, handle = cache[a][z]
        ainv = pow(a, -1, e)
        perm[y] = problem.action.obj_perm[ainv][oz]
        comps[y] = problem.action.morph_perm[ainv][handle]
    return WreathElement(C, perm, comps)


def _max_cyclic_subgroup(H, e):
    best = None
    for h in sorted(H):
        cyc = subgroup_closure([h], e)
        if best is None or len(cyc) > len(best[1]):
            best = (h, cyc)
    return best  # (generator, subgroup)


def xhat(problem: XeProblem):
    """Solutions with <sigma> itself transitive on the objects."""
    C = problem.groupoid
    n = C.n_objects
    e = problem.e
    if e % n != 0:
        return []
    for i in range(n):
        for j in range(n):
            if not C.is_connected_pair(i, j):
                return []
    H = problem.group
    b, Hcyc = _max_cyclic_subgroup(H, e)
    if len(Hcyc) == 1:
        candidates = _all_transitive_order_e(problem)
    else:
        candidates = _xhat_cyclic(problem, b)
    out = []
    seen = set()
    for s in candidates:
        if s.key() in seen:
            continue
        seen.add(s.key())
        if all(problem.action.act_element(a, s) == s ** a for a in H):
            out.append(s)
    out.sort(key=lambda w: w.key())
    return out


def _transitive_class_reps(problem: XeProblem):
    """One representative per conjugacy class of transitive sigma^e = 1."""
    C = problem.groupoid
    n = C.n_objects
    e = problem.e
    x = 0
    # chain of connecting morphisms along the cycle 0 -> 1 -> ... -> n-1 -> 0
    connect = [C.hom[(k, k + 1)][0] for k in range(n - 1)]
    reps = []
    seen_labels = set()
    for gamma in C.hom[(x, x)]:
        label = C.conj_label(gamma)
        if label in seen_labels:
            continue
        seen_labels.add(label)
        # gamma^(e/n) must be the identity for sigma^e = 1
        power = C.identity[x]
        for _ in range(e // n):
            power = C.compose(gamma, power)
        if power != C.identity[x]:
            continue
        if n == 1:
            reps.append(WreathElement(C, (0,), (gamma,)))
            continue
        chain = C.identity[x]
        for f in connect:
            chain = C.compose(f, chain)  # x -> n-1
        last = C.compose(gamma, C.inverse(chain))  # n-1 -> 0 with cycle product gamma
        perm = tuple(list(range(1, n)) + [0])
        comps = tuple(connect + [last])
        reps.append(WreathElement(C, perm, comps))
    return reps


def _all_transitive_order_e(problem: XeProblem):
    """All transitive sigma with sigma^e = 1 (trivial acting subgroup)."""
    C = problem.groupoid
    n = C.n_objects
    e = problem.e
    out = []
    if n == 1:
        for gamma in C.hom[(0, 0)]:
            s = WreathElement(C, (0,), (gamma,))
            if (s ** e).is_identity():
                out.append(s)
        return out
    for cycle_rest in itertools.permutations(range(1, n)):
        perm = [None] * n
        cyc = (0,) + cycle_rest
        for idx in range(n):
            perm[cyc[idx]] = cyc[(idx + 1) % n]
        pools = [C.hom[(k, perm[k])] for k in range(n)]
        for comps in itertools.product(*pools):
            s = WreathElement(C, perm, comps)
            if (s ** e).is_identity():
                out.append(s)
    return out


def _xhat_cyclic(problem: XeProblem, b):
    """Leaf case via conjugacy classes and transporter sets (b generates
    the maximal cyclic subgroup)."""
    C = problem.groupoid
    e = problem.e
    act = problem.action
    Hcyc = subgroup_closure([b], e)
    act_cyc = act.restrict_elements(Hcyc)
    D, embed, tau, gamma_of = semidirect_groupoid(C, act_cyc)
    D_handles = set(embed.values())
    tau_b = tau[b % e]
    out = []
    for sigma_phi in _transitive_class_reps(problem):
        bsigma = act.act_element(b, sigma_phi)
        sigma_b = sigma_phi ** b
        U = transporter(C, None, bsigma, sigma_b)
        for beta in U:
            upsilon = embed_wreath(beta, D, embed) * tau_b
            V = transporter(D, D_handles, upsilon, tau_b)
            for alpha_d in V:
                # map alpha back to wreath(C)
                back = {v: k for k, v in embed.items()}
                alpha = WreathElement(C, alpha_d.perm,
                                      [back[h] for h in alpha_d.comps])
                out.append(alpha * sigma_phi * alpha.inverse())
    return out
