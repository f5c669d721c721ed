"""Finite groupoids, wreath arithmetic, conjugacy types and transporters.

Morphisms are opaque integer handles with composition tables; the bridge
from matrices to tables happens once at construction.  A wreath element is
an object permutation together with one morphism per object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class Groupoid:
    """Objects 0..n-1 with finite hom sets of invertible morphisms."""

    def __init__(self, n_objects, hom, comp, payload=None, object_names=None):
        """hom: dict (i, j) -> tuple of handles; comp: dict (g, f) -> g∘f."""
        self.n_objects = n_objects
        self.hom = {k: tuple(v) for k, v in hom.items()}
        self.comp = dict(comp)
        self.payload = dict(payload) if payload else {}
        self.object_names = object_names
        self.src = {}
        self.tgt = {}
        for (i, j), hs in self.hom.items():
            for h in hs:
                self.src[h] = i
                self.tgt[h] = j
        self.identity = {}
        for i in range(n_objects):
            for h in self.hom.get((i, i), ()):
                if all(self.comp.get((h, f)) == f for f in self._incoming(i)) and \
                   all(self.comp.get((g, h)) == g for g in self._outgoing(i)):
                    self.identity[i] = h
                    break
            if i not in self.identity:
                raise ValueError("object %d has no identity morphism" % i)
        self.inv = {}
        for h, i in self.src.items():
            j = self.tgt[h]
            for g in self.hom.get((j, i), ()):
                if (self.comp.get((g, h)) == self.identity[i]
                        and self.comp.get((h, g)) == self.identity[j]):
                    self.inv[h] = g
                    break
            if h not in self.inv:
                raise ValueError("morphism %r has no inverse" % (h,))
        self._conj_labels = None

    def _incoming(self, i):
        return [h for (a, b), hs in self.hom.items() if b == i for h in hs]

    def _outgoing(self, i):
        return [h for (a, b), hs in self.hom.items() if a == i for h in hs]

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_matrices(hom_matrices, n_objects):
        """Build handle tables from a dict (i, j) -> list of Matrix."""
        handles = {}
        hom = {}
        payload = {}
        lookup = {}
        counter = itertools.count()
        for (i, j) in sorted(hom_matrices):
            hs = []
            for M in hom_matrices[(i, j)]:
                h = next(counter)
                hs.append(h)
                payload[h] = M
                lookup[(i, j, M.key())] = h
            hom[(i, j)] = tuple(hs)
        comp = {}
        for (i, j), hs in hom.items():
            for (j2, k), gs in hom.items():
                if j2 != j:
                    continue
                for f in hs:
                    for g in gs:
                        M = payload[g] * payload[f]
                        comp[(g, f)] = lookup[(i, k, M.key())]
        G = Groupoid(n_objects, hom, comp, payload=payload)
        G._lookup = lookup
        return G

    def handle_of_matrix(self, i, j, M):
        return self._lookup[(i, j, M.key())]

    # -- basic operations -------------------------------------------------

    def compose(self, g, f):
        return self.comp[(g, f)]

    def inverse(self, h):
        return self.inv[h]

    def aut_handles(self):
        out = []
        for i in range(self.n_objects):
            out.extend(self.hom.get((i, i), ()))
        return out

    def total_aut_size(self):
        """#aut(C): the number of automorphisms across all objects."""
        return len(self.aut_handles())

    def is_connected_pair(self, i, j):
        return bool(self.hom.get((i, j), ()))

    def conj_label(self, h):
        """Canonical representative of the ~_C class of an automorphism."""
        if self._conj_labels is None:
            self._compute_conj_labels()
        return self._conj_labels[h]

    def _compute_conj_labels(self):
        auts = self.aut_handles()
        parent = {h: h for h in auts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra

        for h in auts:
            i = self.src[h]
            for (a, b), alphas in self.hom.items():
                if a != i:
                    continue
                for al in alphas:
                    conj = self.comp[(self.comp[(al, h)], self.inv[al])]
                    union(h, conj)
        self._conj_labels = {h: find(h) for h in auts}

    def full_subgroupoid(self, objects):
        """Full subgroupoid on an object subset.

        Returns (sub, obj_to_sub, handle_to_sub, handle_from_sub).
        """
        objects = sorted(objects)
        obj_to_sub = {o: k for k, o in enumerate(objects)}
        hom = {}
        handle_map = {}
        counter = itertools.count()
        for a in objects:
            for b in objects:
                hs = self.hom.get((a, b), ())
                subs = []
                for h in hs:
                    nh = next(counter)
                    handle_map[h] = nh
                    subs.append(nh)
                if subs:
                    hom[(obj_to_sub[a], obj_to_sub[b])] = tuple(subs)
        comp = {}
        for (g, f), gf in self.comp.items():
            if g in handle_map and f in handle_map and gf in handle_map:
                comp[(handle_map[g], handle_map[f])] = handle_map[gf]
        payload = {handle_map[h]: self.payload[h]
                   for h in handle_map if h in self.payload}
        sub = Groupoid(len(objects), hom, comp, payload=payload)
        inverse_map = {v: k for k, v in handle_map.items()}
        return sub, obj_to_sub, handle_map, inverse_map


class WreathElement:
    """((sigma_K)_K, s): object permutation with per-object morphisms."""

    __slots__ = ("groupoid", "perm", "comps")

    def __init__(self, groupoid, perm, comps):
        self.groupoid = groupoid
        self.perm = tuple(perm)
        self.comps = tuple(comps)
        for k, h in enumerate(self.comps):
            if groupoid.src[h] != k or groupoid.tgt[h] != self.perm[k]:
                raise ValueError("component %d has wrong source/target" % k)

    @staticmethod
    def identity(groupoid):
        n = groupoid.n_objects
        return WreathElement(groupoid, range(n),
                             [groupoid.identity[i] for i in range(n)])

    def __mul__(self, other):
        """self o other (apply other first)."""
        if self.groupoid is not other.groupoid:
            raise ValueError("wreath elements over different groupoids")
        G = self.groupoid
        perm = tuple(self.perm[other.perm[k]] for k in range(len(self.perm)))
        comps = tuple(G.compose(self.comps[other.perm[k]], other.comps[k])
                      for k in range(len(self.perm)))
        return WreathElement(G, perm, comps)

    def inverse(self):
        G = self.groupoid
        n = len(self.perm)
        inv_perm = [0] * n
        for k, v in enumerate(self.perm):
            inv_perm[v] = k
        comps = [G.inverse(self.comps[inv_perm[k]]) for k in range(n)]
        return WreathElement(G, inv_perm, comps)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = WreathElement.identity(self.groupoid)
        base = self
        while k:
            if k & 1:
                out = base * out
            k >>= 1
            if k:
                base = base * base
        return out

    def is_identity(self):
        G = self.groupoid
        return all(self.perm[k] == k and self.comps[k] == G.identity[k]
                   for k in range(len(self.perm)))

    def orbits(self):
        n = len(self.perm)
        seen = [False] * n
        out = []
        for k in range(n):
            if seen[k]:
                continue
            orb = []
            cur = k
            while not seen[cur]:
                seen[cur] = True
                orb.append(cur)
                cur = self.perm[cur]
            out.append(tuple(orb))
        return out

    def key(self):
        return (self.perm, self.comps)

    def __eq__(self, other):
        return (isinstance(other, WreathElement)
                and self.groupoid is other.groupoid and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "WreathElement(perm=%r, comps=%r)" % (self.perm, self.comps)


def lambda_at(sigma: WreathElement, k):
    """The cycle product of sigma at object k: sigma^{orbit length} at k."""
    G = sigma.groupoid
    acc = sigma.comps[k]
    cur = sigma.perm[k]
    while cur != k:
        acc = G.compose(sigma.comps[cur], acc)
        cur = sigma.perm[cur]
    return acc


@dataclass(frozen=True)
class ConjType:
    entries: tuple  # sorted tuple of (orbit length, class label)

    def __len__(self):
        return len(self.entries)


def conj_type(sigma: WreathElement) -> ConjType:
    G = sigma.groupoid
    entries = []
    for orb in sigma.orbits():
        lam = lambda_at(sigma, orb[0])
        entries.append((len(orb), G.conj_label(lam)))
    return ConjType(tuple(sorted(entries)))


def transporter(C: Groupoid, D_handles, rho: WreathElement, sigma: WreathElement):
    """All alpha with components in D_handles such that alpha*rho = sigma*alpha.

    D_handles: set of handles of a wide subgroupoid of C (None means C).
    """
    if D_handles is None:
        D_handles = set(C.src)
    orbits_r = sorted(rho.orbits(), key=lambda o: (len(o), o))
    orbits_s = sorted(sigma.orbits(), key=lambda o: (len(o), o))
    by_len_r = {}
    by_len_s = {}
    for o in orbits_r:
        by_len_r.setdefault(len(o), []).append(o)
    for o in orbits_s:
        by_len_s.setdefault(len(o), []).append(o)
    if sorted(by_len_r) != sorted(by_len_s) or any(
            len(by_len_r[k]) != len(by_len_s[k]) for k in by_len_r):
        return []

    pair_cache = {}

    def orbit_transporters(O, O2):
        key = (O, O2)
        if key not in pair_cache:
            pair_cache[key] = _orbit_transporter(C, D_handles, rho, sigma, O, O2)
        return pair_cache[key]

    # assemble over all length-preserving orbit bijections
    lengths = sorted(by_len_r)
    out = []

    def rec(idx, assignment):
        if idx == len(lengths):
            # cartesian product of per-orbit choices
            choice_lists = [orbit_transporters(O, O2) for O, O2 in assignment]
            if any(not c for c in choice_lists):
                return
            for combo in itertools.product(*choice_lists):
                perm = [None] * C.n_objects
                comps = [None] * C.n_objects
                for partial in combo:
                    for k, (pk, ck) in partial.items():
                        perm[k] = pk
                        comps[k] = ck
                out.append(WreathElement(C, perm, comps))
            return
        length = lengths[idx]
        rs = by_len_r[length]
        ss = by_len_s[length]
        for target_perm in itertools.permutations(ss):
            rec(idx + 1, assignment + list(zip(rs, target_perm)))

    rec(0, [])
    out.sort(key=lambda w: w.key())
    return out


def _orbit_transporter(C, D_handles, rho, sigma, O, O2):
    """Partial transporters O -> O2 as dicts k -> (a(k), alpha_k)."""
    n = len(O)
    K = O[0]
    lam_r = lambda_at(rho, K)
    results = []
    for L in O2:
        lam_s = lambda_at(sigma, L)
        for w in C.hom.get((K, L), ()):
            if w not in D_handles:
                continue
            if C.compose(w, lam_r) != C.compose(lam_s, w):
                continue
            # build alpha via alpha_{r^k K} = (sigma^k)_L o w o ((rho^k)_K)^{-1}
            partial = {}
            ok = True
            rk_K = C.identity[K]   # (rho^k)_K
            sk_L = C.identity[L]   # (sigma^k)_L
            cur_r = K
            cur_s = L
            for _ in range(n):
                alpha_k = C.compose(C.compose(sk_L, w), C.inverse(rk_K))
                if alpha_k not in D_handles:
                    ok = False
                    break
                partial[cur_r] = (cur_s, alpha_k)
                rk_K = C.compose(rho.comps[cur_r], rk_K)
                sk_L = C.compose(sigma.comps[cur_s], sk_L)
                cur_r = rho.perm[cur_r]
                cur_s = sigma.perm[cur_s]
            if not ok:
                continue
            # verify the intertwining relation on the orbit
            good = all(
                C.compose(partial[rho.perm[k]][1], rho.comps[k])
                == C.compose(sigma.comps[partial[k][0]], partial[k][1])
                for k in O
            )
            if good:
                results.append(partial)
    return results


class GroupAction:
    """Action of a finite abelian group (residues of (Z/eZ)*) on a groupoid."""

    def __init__(self, groupoid: Groupoid, modulus, elements, obj_perm, morph_perm):
        """elements: iterable of residues; obj_perm/morph_perm: dicts per residue."""
        self.groupoid = groupoid
        self.modulus = modulus
        self.elements = tuple(sorted(set(x % modulus for x in elements)))
        self.obj_perm = {a: tuple(obj_perm[a]) for a in self.elements}
        self.morph_perm = {a: dict(morph_perm[a]) for a in self.elements}
        if 1 % modulus not in self.elements and modulus > 1:
            raise ValueError("action must contain the identity residue")

    @staticmethod
    def trivial(groupoid, modulus=1, elements=(1,)):
        ident_obj = tuple(range(groupoid.n_objects))
        ident_mor = {h: h for h in groupoid.src}
        elements = tuple(set(x % modulus for x in elements) | {1 % modulus})
        return GroupAction(groupoid, modulus,
                           elements,
                           {a: ident_obj for a in elements},
                           {a: ident_mor for a in elements})

    def act_element(self, a, sigma: WreathElement) -> WreathElement:
        """^a sigma: apply the functor of a to a wreath element."""
        a %= self.modulus
        op = self.obj_perm[a]
        mp = self.morph_perm[a]
        n = self.groupoid.n_objects
        inv_op = [0] * n
        for k, v in enumerate(op):
            inv_op[v] = k
        perm = [op[sigma.perm[inv_op[k]]] for k in range(n)]
        comps = [mp[sigma.comps[inv_op[k]]] for k in range(n)]
        return WreathElement(self.groupoid, perm, comps)

    def validate(self):
        G = self.groupoid
        for a in self.elements:
            op, mp = self.obj_perm[a], self.morph_perm[a]
            for h in G.src:
                if G.src[mp[h]] != op[G.src[h]] or G.tgt[mp[h]] != op[G.tgt[h]]:
                    raise ValueError("action does not respect sources/targets")
            for (g, f), gf in G.comp.items():
                if G.comp[(mp[g], mp[f])] != mp[gf]:
                    raise ValueError("action is not functorial")
        for a in self.elements:
            for b in self.elements:
                c = (a * b) % self.modulus
                if c not in self.elements and self.modulus > 1:
                    raise ValueError("element set not closed")
                for h in self.groupoid.src:
                    if self.morph_perm[a][self.morph_perm[b][h]] != \
                            self.morph_perm[c][h]:
                        raise ValueError("action is not a homomorphism")
        ident = 1 % self.modulus
        if any(self.morph_perm[ident][h] != h for h in self.groupoid.src):
            raise ValueError("identity residue acts non-trivially")

    def restrict_elements(self, subgroup):
        return GroupAction(self.groupoid, self.modulus, subgroup,
                           {a % self.modulus: self.obj_perm[a % self.modulus]
                            for a in subgroup},
                           {a % self.modulus: self.morph_perm[a % self.modulus]
                            for a in subgroup})

    def restrict_to_subgroupoid(self, objects, sub, obj_to_sub, handle_map):
        """The induced action on a full subgroupoid over stable objects."""
        elements = self.elements
        obj_perm = {}
        morph_perm = {}
        for a in elements:
            op = self.obj_perm[a]
            obj_perm[a] = tuple(obj_to_sub[op[o]] for o in sorted(objects))
            mp = {}
            for h, nh in handle_map.items():
                mp[nh] = handle_map[self.morph_perm[a][h]]
            morph_perm[a] = mp
        return GroupAction(sub, self.modulus, elements, obj_perm, morph_perm)


def semidirect_groupoid(C: Groupoid, action: GroupAction):
    """The semidirect groupoid C x| Gamma.

    Returns (D, embed, tau, gamma_of) where embed maps C-handles to
    D-handles, tau(a) is the wreath element of the group side and
    gamma_of maps a D-handle to its group part.
    """
    elements = action.elements
    counter = itertools.count()
    hom = {}
    handle = {}
    gamma_of = {}
    pair_of = {}
    n = C.n_objects
    for A in range(n):
        for B in range(n):
            hs = []
            for gamma in elements:
                gA = action.obj_perm[gamma][A]
                for s in C.hom.get((gA, B), ()):
                    h = next(counter)
                    handle[(s, gamma, A)] = h
                    gamma_of[h] = gamma
                    pair_of[h] = (s, gamma, A)
                    hs.append(h)
            if hs:
                hom[(A, B)] = tuple(hs)
    comp = {}
    for h1, (rho, gamma, A) in pair_of.items():
        B = C.tgt[rho]
        for h2, (sig, delta, B2) in pair_of.items():
            if B2 != B:
                continue
            # (sig, delta) o (rho, gamma) = (sig o ^delta rho, delta*gamma)
            drho = action.morph_perm[delta][rho]
            newmor = C.comp[(sig, drho)]
            newgamma = (delta * gamma) % action.modulus
            comp[(h2, h1)] = handle[(newmor, newgamma, A)]
    D = Groupoid(n, hom, comp)
    embed = {s: handle[(s, 1 % action.modulus, C.src[s])] for s in C.src}
    tau = {}
    for a in elements:
        op = action.obj_perm[a]
        comps = []
        for A in range(n):
            comps.append(handle[(C.identity[op[A]], a, A)])
        tau[a] = WreathElement(D, op, comps)
    return D, embed, tau, gamma_of


def embed_wreath(sigma: WreathElement, D: Groupoid, embed) -> WreathElement:
    return WreathElement(D, sigma.perm, [embed[h] for h in sigma.comps])


def groupoid_from_group(mult_table, n_objects):
    """Connected groupoid on n_objects with every hom set a copy of a group.

    mult_table: k x k Cayley table of group-element indices with identity 0.
    Morphism handles encode (source, target, group element); composition is
    the group law transported along the constant trivialization.
    """
    k = len(mult_table)
    hom = {}
    handle = {}
    counter = itertools.count()
    for i in range(n_objects):
        for j in range(n_objects):
            hs = []
            for g in range(k):
                h = next(counter)
                handle[(i, j, g)] = h
                hs.append(h)
            hom[(i, j)] = tuple(hs)
    triple = {v: t for t, v in handle.items()}
    comp = {}
    for h1, (i, j, g1) in triple.items():
        for h2, (j2, l, g2) in triple.items():
            if j2 != j:
                continue
            comp[(h2, h1)] = handle[(i, l, mult_table[g2][g1])]
    G = Groupoid(n_objects, hom, comp)
    G.group_triple = triple
    G.group_handle = handle
    return G


def disjoint_union(groupoids):
    """Disjoint union of groupoids with shifted object and handle labels."""
    hom = {}
    comp = {}
    payload = {}
    obj_off = 0
    handle_off = 0
    for C in groupoids:
        for (i, j), hs in C.hom.items():
            hom[(i + obj_off, j + obj_off)] = tuple(h + handle_off for h in hs)
        for (g, f), gf in C.comp.items():
            comp[(g + handle_off, f + handle_off)] = gf + handle_off
        for h, M in C.payload.items():
            payload[h + handle_off] = M
        obj_off += C.n_objects
        handle_off += max(C.src) + 1 if C.src else 0
    return Groupoid(obj_off, hom, comp, payload=payload)


def all_wreath_elements(C: Groupoid):
    """Exhaustive enumeration of wreath(C); exponential, test oracle only."""
    n = C.n_objects
    out = []
    for perm in itertools.permutations(range(n)):
        pools = [C.hom.get((k, perm[k]), ()) for k in range(n)]
        if any(not p for p in pools):
            continue
        for comps in itertools.product(*pools):
            out.append(WreathElement(C, perm, comps))
    return out


def invariant_groupoid(C: Groupoid, action: GroupAction):
    """Objects are orbits; morphisms are the equivariant families.

    Returns (inv_groupoid, orbit_list, family_of_handle).
    """
    n = C.n_objects
    elements = action.elements
    orbit_of = {}
    orbits = []
    for o in range(n):
        if o in orbit_of:
            continue
        orb = set()
        stack = [o]
        while stack:
            x = stack.pop()
            if x in orb:
                continue
            orb.add(x)
            for a in elements:
                stack.append(action.obj_perm[a][x])
        orb = tuple(sorted(orb))
        for x in orb:
            orbit_of[x] = len(orbits)
        orbits.append(orb)
    m = len(orbits)

    def families(oa, ob):
        """Equivariant families from orbit oa to orbit ob."""
        A = orbits[oa]
        B = orbits[ob]
        if len(A) != len(B):
            return []
        K0 = A[0]
        stab = [a for a in elements if action.obj_perm[a][K0] == K0]
        out = []
        for L in B:
            for w in C.hom.get((K0, L), ()):
                if any(action.morph_perm[a][w] != w for a in stab):
                    continue
                fam = {}
                ok = True
                for a in elements:
                    src = action.obj_perm[a][K0]
                    img = action.morph_perm[a][w]
                    if src in fam and fam[src] != img:
                        ok = False
                        break
                    fam[src] = img
                if not ok or len(fam) != len(A):
                    continue
                tgts = sorted(C.tgt[f] for f in fam.values())
                if tgts != sorted(B):
                    continue
                out.append(tuple(fam[k] for k in A))
        return sorted(set(out))

    counter = itertools.count()
    hom = {}
    fam_of = {}
    handle_of_fam = {}
    for oa in range(m):
        for ob in range(m):
            fams = families(oa, ob)
            if fams:
                hs = []
                for fam in fams:
                    h = next(counter)
                    fam_of[h] = (oa, ob, fam)
                    handle_of_fam[(oa, fam)] = h
                    hs.append(h)
                hom[(oa, ob)] = tuple(hs)
    comp = {}
    for h1, (oa, ob, fam1) in fam_of.items():
        A = orbits[oa]
        for h2, (ob2, oc, fam2) in fam_of.items():
            if ob2 != ob:
                continue
            B = orbits[ob]
            composed = []
            for idx, K in enumerate(A):
                f = fam1[idx]
                tgt = C.tgt[f]
                g = fam2[B.index(tgt)]
                composed.append(C.comp[(g, f)])
            comp[(h2, h1)] = handle_of_fam[(oa, tuple(composed))]
    return Groupoid(m, hom, comp), orbits, fam_of
