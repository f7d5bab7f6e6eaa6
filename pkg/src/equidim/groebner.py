"""Buchberger engine and ideal-theoretic toolkit.

Reduced Groebner bases via Buchberger's algorithm with Gebauer-Moeller
pair elimination and normal selection (smallest lcm degree first).
On top of the engine: normal forms, ideal membership, saturation by a
polynomial (elimination with an auxiliary variable ranked first),
radical membership (Rabinowitsch), ideal intersection, combinatorial
Krull dimension and zero-dimensional degree.

Unit ideals short-circuit everywhere: as soon as a nonzero constant is
produced the basis {1} is returned, since empty cells arise constantly
during decomposition.
"""

from __future__ import annotations

from heapq import heappush, heappop
from typing import Iterable, Sequence

import numpy as np

from .gf import ContractViolation
from .fastred import ArrayReducers, Packer, PackOverflow
from .rings import MonomialOrder, PolyRing, Polynomial


class GroebnerBasis:
    """Reduced Groebner basis; unique per (ideal, order).

    Generators are monic, inter-reduced and stored in descending
    leading-monomial order, so structural equality decides ideal
    equality.  The empty tuple represents the zero ideal.
    """

    __slots__ = ("ring", "gens", "_reducers", "_quotient")

    def __init__(self, ring: PolyRing, gens: tuple[Polynomial, ...]):
        self.ring = ring
        self.gens = gens
        self._reducers = None
        self._quotient = None  # zero-dimensional structure, filled lazily

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].is_one()

    @property
    def is_zero_ideal(self) -> bool:
        return not self.gens

    def reducers(self):
        """Generators prepared for reduction, ascending by leading key."""
        if self._reducers is None:
            self._reducers = _prep_reducers(self.gens)
        return self._reducers

    def lead_evecs(self) -> list[int]:
        return [g.terms[0][1] for g in self.gens]

    def __iter__(self):
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.gens == other.gens
        )

    def __hash__(self) -> int:
        return hash((self.ring.names, self.gens))

    def __repr__(self) -> str:
        return "GB{" + ", ".join(map(str, self.gens)) + "}"

    def contains(self, f: Polynomial) -> bool:
        return ideal_member(f, self)

    def contains_ideal(self, other: "GroebnerBasis") -> bool:
        return all(ideal_member(g, self) for g in other.gens)


def _prep_reducers(gens: Sequence[Polynomial]):
    """[(lm_key, lm_evec, tail_terms)] sorted ascending by lm_key."""
    reds = []
    for g in gens:
        k, ev, c = g.terms[0]
        assert c == 1, "reducers must be monic"
        reds.append((k, ev, g.terms[1:]))
    reds.sort(key=lambda r: r[0])
    return reds


def _reduce_terms(ring: PolyRing, terms, reducers) -> dict[int, tuple[int, int]]:
    """Fully reduce a term stream; returns {evec: (key, coeff)} remainder.

    Heap-driven: monomials are processed in strictly decreasing order,
    so once a monomial is popped no further contributions to it can
    appear and it can be finalized or rewritten on the spot.
    """
    p = ring.field.p
    guard = ring._evec_guard
    acc: dict[int, int] = {}
    heap: list[tuple[int, int]] = []
    out: dict[int, tuple[int, int]] = {}
    acc_get = acc.get
    acc_pop = acc.pop
    push = heappush
    pop = heappop
    for k, ev, c in terms:
        v = acc_get(ev)
        if v is None:
            acc[ev] = c % p
            push(heap, (-k, ev))
        else:
            acc[ev] = (v + c) % p
    while heap:
        nk, ev = pop(heap)
        c = acc_pop(ev, 0)
        if not c:
            continue
        k = -nk
        hit = None
        for red in reducers:
            if red[0] > k:
                break
            d = ev - red[1]
            if d >= 0 and not (d & guard):
                hit = red
                break
        if hit is None:
            out[ev] = (k, c)
            continue
        dk = k - hit[0]
        dev = ev - hit[1]
        for tk, tev, tc in hit[2]:
            nev = tev + dev
            v = acc_get(nev)
            if v is None:
                acc[nev] = (-c * tc) % p
                push(heap, (-(tk + dk), nev))
            else:
                acc[nev] = (v - c * tc) % p
    return out


def _dict_to_poly(ring: PolyRing, d: dict[int, tuple[int, int]]) -> Polynomial:
    items = [(k, ev, c) for ev, (k, c) in d.items() if c]
    items.sort(reverse=True)
    return Polynomial(ring, tuple(items))


def normal_form(f: Polynomial, basis: "GroebnerBasis | Sequence[Polynomial]") -> Polynomial:
    """Remainder of f modulo the basis; unique for a reduced basis."""
    if isinstance(basis, GroebnerBasis):
        if f.ring != basis.ring:
            raise ContractViolation("polynomial and basis from different rings")
        reducers = basis.reducers()
        ring = basis.ring
    else:
        ring = f.ring
        reducers = _prep_reducers([g.monic() for g in basis if not g.is_zero()])
    if f.is_zero() or not reducers:
        return f
    return _dict_to_poly(ring, _reduce_terms(ring, f.terms, reducers))


def _spoly_terms(ring: PolyRing, f: Polynomial, g: Polynomial, lcm_ev: int):
    """Term stream of the S-polynomial of two monic polynomials."""
    kl = ring.key_of_evec(lcm_ev)
    fk, fe, _ = f.terms[0]
    gk, ge, _ = g.terms[0]
    p = ring.field.p
    stream = [(k + kl - fk, ev + lcm_ev - fe, c) for k, ev, c in f.terms[1:]]
    stream += [(k + kl - gk, ev + lcm_ev - ge, (-c) % p) for k, ev, c in g.terms[1:]]
    return stream


def _min_hitting_set(supports: list[frozenset[int]]) -> int:
    """Smallest set of variables meeting every support (exact search)."""
    supports = [s for s in supports if s]
    # discard supersets: hitting a subset hits the superset
    supports.sort(key=len)
    minimal: list[frozenset[int]] = []
    for s in supports:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    best = [len(set().union(*minimal))] if minimal else [0]

    def dfs(idx: int, chosen: set[int], count: int):
        if count >= best[0]:
            return
        while idx < len(minimal) and minimal[idx] & chosen:
            idx += 1
        if idx == len(minimal):
            best[0] = count
            return
        for v in sorted(minimal[idx]):
            chosen.add(v)
            dfs(idx + 1, chosen, count + 1)
            chosen.remove(v)

    if minimal:
        dfs(0, set(), 0)
    return best[0]


def buchberger(polys: Iterable[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None,
               known_basis: Sequence[Polynomial] = ()) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    The unit ideal is returned as the single generator {1}.  An empty
    input (or all zeros) yields the zero ideal with no generators.

    ``known_basis`` seeds the computation with generators already known
    to form a Groebner basis under the target order: their mutual
    S-polynomials reduce to zero by assumption and are never enqueued.
    """
    polys = [f for f in polys if f is not None]
    if ring is None:
        if not polys:
            raise ContractViolation("cannot infer the ring from an empty input")
        ring = polys[0].ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        polys = [f.convert(ring) for f in polys]
        known_basis = [f.convert(ring) for f in known_basis]
    for f in polys:
        if f.ring != ring:
            raise ContractViolation("all inputs must share one ring")

    seed = [f for f in known_basis if not f.is_zero()]
    inputs = [f for f in polys if not f.is_zero()]
    for f in seed + inputs:
        if f.is_constant():
            return GroebnerBasis(ring, (ring.one(),))
    if not inputs and not seed:
        return GroebnerBasis(ring, ())

    lcm_evec = ring.lcm_evec
    unpack = ring.unpack_evec
    pack = ring.pack_evec
    keyfn = ring.key_of_evec
    degfn = ring.degree_of_key
    divides = ring.divides

    gens: list[Polynomial] = []
    lm_e: list[int] = []
    lm_x: list[tuple[int, ...]] = []  # unpacked lead exponents, for lcms
    pairs: list[tuple[int, int, int, int]] = []  # (lcm_key, i, j, lcm_ev)
    reducers: list = []

    # vectorized reduction when the monomials fit a narrow int64 packing
    fast: list = [None]
    width = 63 // ring.nvars
    if width >= 4:
        cap = (1 << (width - 1)) - 1
        maxdeg = max(f.total_degree() for f in seed + inputs)
        if maxdeg + 2 <= cap:
            fast[0] = ArrayReducers(Packer(ring, cap))

    def full_reduce(stream) -> Polynomial:
        areds = fast[0]
        # arrays win on bulky reductions; tiny ones stay on the dict path
        if areds is not None and len(stream) >= 150:
            try:
                ks, es, cs = areds.packer.stream_in(stream)
                rk, re_, rc = areds.reduce(ks, es, cs)
                return areds.packer.poly_out(rk, re_, rc)
            except PackOverflow:
                fast[0] = None  # leave the envelope: exact wide path from here
        return _dict_to_poly(ring, _reduce_terms(ring, stream, reducers))

    def add_reducer(g: Polynomial):
        k, ev, _ = g.terms[0]
        entry = (k, ev, g.terms[1:])
        lo, hi = 0, len(reducers)
        while lo < hi:
            mid = (lo + hi) // 2
            if reducers[mid][0] < k:
                lo = mid + 1
            else:
                hi = mid
        reducers.insert(lo, entry)
        if fast[0] is not None:
            try:
                fast[0].insert(g)
            except PackOverflow:
                fast[0] = None

    def replace_reducer(old: Polynomial, new: Polynomial):
        k = old.terms[0][0]
        lo, hi = 0, len(reducers)
        while lo < hi:
            mid = (lo + hi) // 2
            if reducers[mid][0] < k:
                lo = mid + 1
            else:
                hi = mid
        assert reducers[lo][0] == k
        reducers[lo] = (k, new.terms[0][1], new.terms[1:])
        areds = fast[0]
        if areds is not None:
            try:
                ks, es, cs = areds.packer.poly_in(new)
                pos = int(np.searchsorted(areds.lead_keys, int(ks[-1])))
                areds.tails[pos] = (ks[:-1], es[:-1], cs[:-1])
            except PackOverflow:
                fast[0] = None

    def retro_reduce(he: int):
        """Tail-reduce existing generators against the new lead monomial.

        Leads never change, so the pair bookkeeping stays valid, while
        later reductions see short tails instead of long cascades.
        """
        for idx in range(len(gens)):
            g = gens[idx]
            if any(divides(he, ev) for _, ev, _ in g.terms[1:]):
                lead = Polynomial(ring, g.terms[:1])
                rest = full_reduce(g.terms[1:])
                newg = lead + rest
                replace_reducer(g, newg)
                gens[idx] = newg

    def update(h: Polynomial, with_pairs: bool = True):
        """Gebauer-Moeller pair update with the new generator h."""
        nonlocal pairs
        t = len(gens)
        he = h.terms[0][1]
        hx = unpack(he)
        if with_pairs:
            cand = []
            for i in range(t):
                le = pack(tuple(map(max, lm_x[i], hx)))
                cand.append((keyfn(le), i, le))
            cand.sort()
            kept: list[tuple[int, int, int]] = []
            for lk, i, le in cand:
                if any(divides(le2, le) for _, _, le2 in kept):
                    continue
                kept.append((lk, i, le))
            # prune old pairs made redundant by h
            newpairs = []
            for entry in pairs:
                _, i, j, le = entry
                if divides(he, le):
                    if (pack(tuple(map(max, lm_x[i], hx))) != le
                            and pack(tuple(map(max, lm_x[j], hx))) != le):
                        continue
                newpairs.append(entry)
            # drop coprime pairs (product criterion) after they served in pruning
            for lk, i, le in kept:
                if le != lm_e[i] + he:
                    newpairs.append((lk, i, t, le))
            newpairs.sort()
            pairs = newpairs
        if with_pairs:
            retro_reduce(he)
        gens.append(h)
        lm_e.append(he)
        lm_x.append(hx)
        add_reducer(h)

    for f in sorted(seed, key=lambda f: f.terms[0][0]):
        update(f.monic(), with_pairs=False)

    # seed with the reduced inputs, smallest leading terms first
    inputs.sort(key=lambda f: f.terms[0][0])
    for f in inputs:
        r = full_reduce(f.terms)
        if r.is_zero():
            continue
        if r.is_constant():
            return GroebnerBasis(ring, (ring.one(),))
        update(r.monic())

    cursor = 0
    while cursor < len(pairs):
        _, i, j, le = pairs[cursor]
        cursor += 1
        stream = _spoly_terms(ring, gens[i], gens[j], le)
        r = full_reduce(stream)
        if r.is_zero():
            continue
        if r.is_constant():
            return GroebnerBasis(ring, (ring.one(),))
        pairs = pairs[cursor:]
        cursor = 0
        update(r.monic())

    return GroebnerBasis(ring, _interreduce(ring, gens))


def _interreduce(ring: PolyRing, gens: list[Polynomial]) -> tuple[Polynomial, ...]:
    """Minimalize and tail-reduce to the unique reduced basis."""
    if not gens:
        return ()
    # minimal generators: leading monomial not divisible by another's
    order = sorted(range(len(gens)), key=lambda i: gens[i].terms[0][0])
    keep: list[int] = []
    kept_lms: list[int] = []
    for i in order:
        lm = gens[i].terms[0][1]
        if any(ring.divides(e, lm) for e in kept_lms):
            continue
        keep.append(i)
        kept_lms.append(lm)
    minimal = [gens[i] for i in keep]
    reduced = []
    for i, g in enumerate(minimal):
        others = _prep_reducers([h for j, h in enumerate(minimal) if j != i])
        r = _dict_to_poly(ring, _reduce_terms(ring, g.terms, others))
        reduced.append(r.monic())
    reduced.sort(key=lambda f: f.terms[0][0], reverse=True)
    return tuple(reduced)


def groebner_of(ring: PolyRing, polys: Iterable[Polynomial]) -> GroebnerBasis:
    """Like ``buchberger`` but usable with an empty generator list."""
    polys = list(polys)
    if not polys:
        return GroebnerBasis(ring, ())
    return buchberger(polys, ring=ring)


def extend_basis(basis: GroebnerBasis, extra: Sequence[Polynomial]) -> GroebnerBasis:
    """Reduced basis of <basis> + <extra>, reusing the known basis."""
    extra = [f for f in extra if not f.is_zero()]
    if not extra:
        return basis
    if basis.is_unit:
        return basis
    return buchberger(extra, ring=basis.ring, known_basis=basis.gens)


def ideal_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    """f in <basis>, by zero normal form."""
    if basis.is_unit:
        return True
    return normal_form(f, basis).is_zero()


def _embed(ring: PolyRing, ext: PolyRing, polys: Iterable[Polynomial]) -> list[Polynomial]:
    vmap = list(range(ring.nvars))
    return [f.convert(ext, vmap) for f in polys]


def _restrict_tfree(ring: PolyRing, ext: PolyRing, basis: GroebnerBasis) -> GroebnerBasis:
    """Extract the elements free of the auxiliary last variable."""
    w = ext.width
    tslot = ext.nvars - 1
    kept = []
    for g in basis.gens:
        # the order eliminates t, so t-freeness of the lead term is enough
        if (g.terms[0][1] >> (tslot * w)) == 0:
            kept.append(g.convert(ring, list(range(ring.nvars)) + [0]))
    if not kept:
        return GroebnerBasis(ring, ())
    if len(kept) == 1 and kept[0].is_constant():
        return GroebnerBasis(ring, (ring.one(),))
    return GroebnerBasis(ring, _interreduce(ring, kept))


def saturate(F: "GroebnerBasis | Sequence[Polynomial]", g: Polynomial) -> GroebnerBasis:
    """Reduced basis of (<F> : g^inf), by elimination.

    A fresh variable t is appended as the last slot but ranked first;
    the basis of <F> + <t*g - 1> is computed under that order and the
    elements containing t are discarded.
    """
    gens = tuple(F.gens) if isinstance(F, GroebnerBasis) else tuple(F)
    ring = F.ring if isinstance(F, GroebnerBasis) else g.ring
    if g.ring != ring:
        raise ContractViolation("polynomial and ideal from different rings")
    if g.is_zero():
        raise ContractViolation("saturation by the zero polynomial")
    gens = [f for f in gens if not f.is_zero()]
    if any(f.is_constant() for f in gens):
        return GroebnerBasis(ring, (ring.one(),))
    if g.is_constant():
        return groebner_of(ring, gens)
    if not gens:
        return GroebnerBasis(ring, ())
    ext = ring.extend_elim()
    ext_gens = _embed(ring, ext, gens)
    t = ext.var(ext.nvars - 1)
    rab = t * g.convert(ext, list(range(ring.nvars))) - 1
    if isinstance(F, GroebnerBasis):
        # t-free generators of a grevlex basis stay a basis under the
        # elimination order, so their mutual pairs can be skipped
        eb = buchberger([rab], ring=ext, known_basis=ext_gens)
    else:
        eb = buchberger(ext_gens + [rab], ring=ext)
    if eb.is_unit:
        return GroebnerBasis(ring, (ring.one(),))
    return _restrict_tfree(ring, ext, eb)


def saturate_seq(F: "GroebnerBasis | Sequence[Polynomial]",
                 factors: Sequence[Polynomial]) -> GroebnerBasis:
    """Successive saturation by each factor; constants are skipped."""
    ring = F.ring if isinstance(F, GroebnerBasis) else factors[0].ring
    current = F if isinstance(F, GroebnerBasis) else groebner_of(ring, F)
    for g in factors:
        if g.is_zero():
            raise ContractViolation("saturation by the zero polynomial")
        if g.is_constant():
            continue
        if current.is_unit:
            return current
        current = saturate(current, g)
    return current


def colon_basis(basis: GroebnerBasis, f: Polynomial) -> GroebnerBasis:
    """Reduced basis of the colon ideal (<basis> : f).

    Works in the pair module {(h, c) : h = c*f mod <basis>}, encoded as
    the Z-graded ideal generated by f*Z0 + Z1, the basis times Z0, and
    the quadratic tag relations, under the block order Z0 > Z1 > rest.
    The Z0-free, Z1-linear part of its basis is the colon ideal.  This
    avoids the power-of-t certificate tower the Rabinowitsch-style
    elimination drags along.
    """
    ring = basis.ring
    if f.ring != ring:
        raise ContractViolation("polynomial and ideal from different rings")
    if f.is_zero():
        raise ContractViolation("colon by the zero polynomial")
    if basis.is_unit or f.is_constant():
        return basis
    if basis.is_zero_ideal:
        return basis
    n = ring.nvars
    names = ring.names + ("@z0", "@z1")
    order = MonomialOrder.block_order([(n,), (n + 1,), tuple(range(n))])
    ext = PolyRing(ring.field, names, order, ring.cap)
    vmap = list(range(n))
    z0 = ext.var(n)
    z1 = ext.var(n + 1)
    # pairs (h, c) are only meaningful modulo the ideal in both slots,
    # so the basis rides along in both tags to keep cofactors reduced
    lifted = [g.convert(ext, vmap) for g in basis.gens]
    seed = [g * z0 for g in lifted] + [g * z1 for g in lifted]
    seed += [z0 * z0, z0 * z1, z1 * z1]
    eb = buchberger([f.convert(ext, vmap) * z0 + z1], ring=ext, known_basis=seed)
    w = ext.width
    kept = []
    for g in eb.gens:
        lead = g.terms[0][1]
        if (lead >> (n * w)) & ((1 << w) - 1):
            continue  # contains Z0
        if ((lead >> ((n + 1) * w)) & ((1 << w) - 1)) != 1:
            continue  # Z1-quadratic junk
        # strip the Z1 tag; Z-grading keeps every term Z1-linear
        unit_z1 = ext.pack_evec([0] * n + [0, 1])
        stripped = [(ev - unit_z1, c) for _, ev, c in g.terms]
        kept.append(ring.from_terms(
            (ring.pack_evec(ext.unpack_evec(ev)[:n]), c) for ev, c in stripped
        ))
    if not kept:
        return basis
    if any(h.is_constant() and not h.is_zero() for h in kept):
        return GroebnerBasis(ring, (ring.one(),))
    return GroebnerBasis(ring, _interreduce(ring, kept))


def saturate_iterated(basis: GroebnerBasis, f: Polynomial) -> GroebnerBasis:
    """Saturation as a stabilized chain of colon ideals."""
    current = basis
    while True:
        nxt = colon_basis(current, f)
        if nxt == current:
            return current
        current = nxt


def radical_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    """f vanishes on V(<basis>): Rabinowitsch trick over R[t]."""
    if basis.is_unit:
        return True
    if f.is_zero():
        return True
    ring = basis.ring
    if f.ring != ring:
        raise ContractViolation("polynomial and basis from different rings")
    if ideal_member(f, basis):
        return True
    if f.is_constant():
        return False  # nonzero constant vanishes nowhere; V is nonempty here
    ext = ring.extend_elim()
    ext_gens = _embed(ring, ext, basis.gens)
    t = ext.var(ext.nvars - 1)
    rab = t * f.convert(ext, list(range(ring.nvars))) - 1
    return buchberger([rab], ring=ext, known_basis=ext_gens).is_unit


def ideal_intersect(G1: GroebnerBasis, G2: GroebnerBasis) -> GroebnerBasis:
    """Reduced basis of <G1> meet <G2> via one auxiliary variable."""
    ring = G1.ring
    if G2.ring != ring:
        raise ContractViolation("ideals from different rings")
    if G1.is_unit:
        return G2
    if G2.is_unit:
        return G1
    if G1.is_zero_ideal or G2.is_zero_ideal:
        return GroebnerBasis(ring, ())
    ext = ring.extend_elim()
    t = ext.var(ext.nvars - 1)
    one_minus_t = ext.one() - t
    ext_gens = [t * g for g in _embed(ring, ext, G1.gens)]
    ext_gens += [one_minus_t * g for g in _embed(ring, ext, G2.gens)]
    eb = buchberger(ext_gens, ring=ext)
    return _restrict_tfree(ring, ext, eb)


def dimension(basis: GroebnerBasis) -> int:
    """Krull dimension of R/<basis>, from leading-term supports.

    The dimension is the largest cardinality of a variable set S such
    that no leading monomial is supported inside S; equivalently n
    minus a minimum hitting set of the supports.
    """
    if basis.is_unit:
        raise ContractViolation("empty variety has no dimension")
    ring = basis.ring
    w = ring.width
    mask = (1 << w) - 1
    supports = []
    for g in basis.gens:
        ev = g.terms[0][1]
        supports.append(frozenset(
            i for i in range(ring.nvars) if (ev >> (i * w)) & mask
        ))
    return ring.nvars - _min_hitting_set(supports)


def quotient_degree(basis: GroebnerBasis) -> int:
    """Number of standard monomials of a zero-dimensional ideal."""
    return len(standard_monomials(basis))


def standard_monomials(basis: GroebnerBasis) -> list[int]:
    """Packed standard monomials (staircase), ascending in the order.

    Requires a zero-dimensional ideal; raises on positive dimension.
    """
    if basis.is_unit:
        return []
    if dimension(basis) != 0:
        raise ContractViolation("degree is defined for zero-dimensional ideals only")
    ring = basis.ring
    lead = basis.lead_evecs()
    divides = ring.divides
    w = ring.width
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ev in frontier:
            for i in range(ring.nvars):
                child = ev + (1 << (i * w))
                if child in seen:
                    continue
                if any(divides(le, child) for le in lead):
                    continue
                seen.add(child)
                nxt.append(child)
        frontier = nxt
    return sorted(seen, key=ring.key_of_evec)
