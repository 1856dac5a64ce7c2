"""Curve-like differential structures on n <= 4 vertices.

A candidate is the canonical biquiver (one solid and one dashed arrow for
every pair i < l) together with coefficients for the allowed differential
terms.  Candidates are filtered by validity, the two composition lemmas and
the dimension of the regularised Ringel dual, then normalised with the
moves of the four-vertex move table and deduplicated.

Only the three m₃-type terms ``rho*b*a``, ``c*psi*a`` and ``c*b*phi`` in
``d(f)`` are considered as higher slots; the report header says so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

import sympy

from .algebra import Arrow, Path, Quiver, add_to, element_str, scalar, trivial, word_key, word_str
from .bocs import Bocs, DiffBiquiver, opposite, parse_expression, validate
from .koszul import regularize, rescale, ringel_dual, substitute
from .rep import compose, make_morphism, check_morphism, simple

SOLID = {
    2: (("a", 1, 2),),
    3: (("a", 1, 2), ("b", 2, 3), ("c", 1, 3)),
    4: (("a", 1, 2), ("b", 2, 3), ("c", 3, 4), ("d", 1, 3), ("e", 2, 4), ("f", 1, 4)),
}
DASHED = {
    2: (("phi", 1, 2),),
    3: (("phi", 1, 2), ("psi", 2, 3), ("chi", 1, 3)),
    4: (("phi", 1, 2), ("psi", 2, 3), ("rho", 3, 4), ("chi", 1, 3), ("sigma", 2, 4), ("tau", 1, 4)),
}
# dashed differentials forced by the composition lemma once scalars are fixed
FIXED = {
    2: {},
    3: {},
    4: {"chi": "psi@phi", "sigma": "rho@psi", "tau": "sigma@phi + rho@chi"},
}
SLOTS = {
    2: (),
    3: (("chi", "psi@phi"), ("c", "psi*a"), ("c", "b*phi")),
    4: (
        ("d", "b*phi"),
        ("d", "psi*a"),
        ("e", "rho*b"),
        ("e", "c*psi"),
        ("f", "rho*d"),
        ("f", "sigma*a"),
        ("f", "c*chi"),
        ("f", "e*phi"),
    ),
}
M3_SLOTS = {2: (), 3: (), 4: (("f", "rho*b*a"), ("f", "c*psi*a"), ("f", "c*b*phi"))}

# booleans (ψa in d, bφ in d, ρb in e, cψ in e, σa in f, ρbφ via ρd, cχ in f)
PATTERNS = {
    "0101001": "A",
    "0110010": "B",
    "0111011": "C",
    "1001001": "D",
    "1001100": "E",
    "1001101": "F",
    "1010100": "G",
    "1011100": "H",
    "1101001": "I",
    "1110110": "J",
    "1111111": "K",
}
# m₃ slots cleared in each row of the move table; the remaining slot gives 1/2
MOVE_TABLE = {
    "A": ("c*psi*a", "c*b*phi"),
    "B": ("rho*b*a", "c*b*phi"),
    "C": ("rho*b*a", "c*psi*a", "c*b*phi"),
    "G": ("rho*b*a", "c*psi*a"),
    "H": ("rho*b*a", "c*psi*a"),
    "I": ("c*psi*a", "c*b*phi"),
    "J": ("rho*b*a", "c*psi*a", "c*b*phi"),
    "K": ("rho*b*a", "c*psi*a", "c*b*phi"),
}
# changes of generators g -> g + (term); the move table entries are realised
# by the first of these whose effect reaches the slot
MOVE_FAMILY = (
    ("f", "e*a"),
    ("f", "c*d"),
    ("e", "c*b"),
    ("d", "b*a"),
    ("chi", "psi*a"),
    ("chi", "b*phi"),
    ("sigma", "c*psi"),
    ("sigma", "rho*b"),
)
FLAGGED = frozenset({"A1", "B1", "B2", "G1"})
FLAG_NOTE = "not Morita equivalent to Λ_f or its Ringel dual"
EXPECTED_LABELS = {
    2: ("1",),
    3: ("2A", "2B", "2C"),
    4: ("A1", "A2", "B1", "B2", "C", "G1", "G2", "H1", "H2", "I1", "I2", "J", "K"),
}
HEADER = (
    "higher slots restricted to rho*b*a, c*psi*a and c*b*phi in d(f); "
    "equivalence is rescaling plus the move table"
)


class ClassifyError(ValueError):
    pass


class IdentificationError(ClassifyError):
    """A biquiver that does not have the shape of a curve-like candidate."""


def _check_n(n: int):
    if n not in (2, 3, 4):
        raise ClassifyError(f"n must be 2, 3 or 4, got {n}")


@lru_cache(maxsize=None)
def canonical_biquiver(n: int) -> DiffBiquiver:
    """The skeleton: arrows for every pair, only the forced dashed differentials."""
    _check_n(n)
    arrows = [Arrow(name, s, t, 0) for name, s, t in SOLID[n]]
    arrows += [Arrow(name, s, t, 1) for name, s, t in DASHED[n]]
    skeleton = DiffBiquiver(Quiver(n, arrows))
    d1 = {v: skeleton.expr(text) for v, text in FIXED[n].items()}
    return skeleton.replace(d1=d1)


@lru_cache(maxsize=None)
def _slot_word(n: int, text: str) -> tuple:
    ((word, _),) = canonical_biquiver(n).expr(text).items()
    return word


def _slot_value(dbq: DiffBiquiver, gen: str, text: str) -> Fraction:
    return dbq.differential(gen).get(_slot_word(dbq.n, text), Fraction(0))


@dataclass(frozen=True)
class CurvelikeCandidate:
    n: int
    coefficients: tuple[Fraction, ...]
    m3: tuple[Fraction, ...] = ()

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, "coefficients", tuple(scalar(c) for c in self.coefficients))
        m3 = tuple(scalar(c) for c in self.m3) or tuple(Fraction(0) for _ in M3_SLOTS[self.n])
        object.__setattr__(self, "m3", m3)
        if len(self.coefficients) != len(SLOTS[self.n]) or len(self.m3) != len(M3_SLOTS[self.n]):
            raise ClassifyError("coefficient vector does not match the slots")

    @cached_property
    def biquiver(self) -> DiffBiquiver:
        base = canonical_biquiver(self.n)
        d0: dict = {}
        d1 = {k: dict(v) for k, v in base.d1.items()}
        slots = zip(SLOTS[self.n] + M3_SLOTS[self.n], self.coefficients + self.m3)
        for (gen, text), c in slots:
            if c:
                table = d1 if base.quiver.arrow(gen).is_dashed else d0
                add_to(table.setdefault(gen, {}), {_slot_word(self.n, text): c})
        return base.replace(d0=d0, d1=d1)

    @property
    def case(self) -> str:
        return case_label(self.n, self.coefficients)

    @property
    def label(self) -> str:
        return self.case

    def differential_terms(self) -> dict[str, str]:
        dbq = self.biquiver
        return {a.name: element_str(dbq.differential(a.name)) for a in dbq.quiver.arrows if dbq.differential(a.name)}

    def with_m3(self, m3: Iterable) -> "CurvelikeCandidate":
        return CurvelikeCandidate(self.n, self.coefficients, tuple(m3))


def pattern(coefficients: Iterable) -> str:
    u1, u2, w1, w2, k1, k2, k3, _k4 = (bool(c) for c in coefficients)
    bits = (u2, u1, w1, w2, k2, k1 and u1, k3)
    return "".join("1" if b else "0" for b in bits)


def case_label(n: int, coefficients: Iterable) -> str:
    coefficients = tuple(coefficients)
    if n == 2:
        return "1"
    if n == 3:
        chi, psi_a, b_phi = (bool(c) for c in coefficients)
        letter = {(True, False): "A", (False, True): "B", (True, True): "C", (False, False): "D"}[(psi_a, b_phi)]
        return f"{2 if chi else 1}{letter}"
    bits = pattern(coefficients)
    return PATTERNS.get(bits, f"pattern {bits}")


# ---------------------------------------------------------------------------
# enumeration


def _flip_actions(n: int) -> list[tuple[int, ...]]:
    """Sign changes of the slots induced by arrow sign flips that fix the forced part."""
    base = canonical_biquiver(n)
    names = [a.name for a in base.quiver.arrows]
    slots = SLOTS[n] + M3_SLOTS[n]
    actions = set()
    for signs in itertools.product((1, -1), repeat=len(names)):
        sign = dict(zip(names, signs))
        if rescale(base, sign) != base:
            continue
        action = []
        for gen, text in slots:
            s = sign[gen]
            for c, factors, _ in _parse(base, text):
                for f in factors:
                    s *= sign[f]
            action.append(s)
        actions.add(tuple(action))
    return sorted(actions)


def _parse(dbq: DiffBiquiver, text: str):
    return parse_expression(dbq.quiver, text)


def _orbit_representative(vector: tuple[int, ...], actions) -> tuple[int, ...]:
    return max(tuple(v * s for v, s in zip(vector, act)) for act in actions)


def enumerate_candidates(n: int) -> list[CurvelikeCandidate]:
    """All valid coefficient assignments in {0, ±1}, one per rescaling orbit."""
    _check_n(n)
    k = len(SLOTS[n])
    actions = [act[:k] for act in _flip_actions(n)]
    reps = sorted({_orbit_representative(v, actions) for v in itertools.product((0, 1, -1), repeat=k)}, reverse=True)
    out = []
    for vec in reps:
        cand = CurvelikeCandidate(n, vec)
        if validate(cand.biquiver).ok:
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# constraints


@dataclass(frozen=True)
class Exclusion:
    candidate: str
    reason: str
    witness: str

    def as_dict(self) -> dict:
        return {"candidate": self.candidate, "reason": self.reason, "witness": self.witness}


def _simple_hom_basis(b: Bocs, i: int, l: int) -> list:
    """Basis of morphisms L(i) -> L(l) for i != l; only dashed i -> l arrows carry data."""
    Li, Ll = simple(b, i), simple(b, l)
    names = [v.name for v in b.quiver.dashed if (v.source, v.target) == (i, l)]
    if not names:
        return []
    rows = []
    for name in names:
        f = make_morphism(b, Li, Ll, dashed={name: [[1]]})
        residue = {a: m for a, m in check_morphism(b, f).residues}
        rows.append([residue[a.name][0, 0] if a.name in residue else 0 for a in b.quiver.solid])
    system = sympy.Matrix(rows).T
    out = []
    for vec in system.nullspace():
        out.append(make_morphism(b, Li, Ll, dashed={name: [[vec[k]]] for k, name in enumerate(names)}))
    return out


def composition_witness(dbq: DiffBiquiver) -> str | None:
    """First triple i < l < m where all composites L(i) -> L(l) -> L(m) vanish."""
    b = Bocs(dbq)
    for i, l, m in itertools.combinations(range(1, dbq.n + 1), 3):
        first = _simple_hom_basis(b, i, l)
        second = _simple_hom_basis(b, l, m)
        if not first or not second:
            return f"Hom(L{i}, L{l}) or Hom(L{l}, L{m}) is zero"
        if all(compose(b, g, f).is_zero() for f in first for g in second):
            return f"composite L{i} -> L{l} -> L{m} is zero"
    return None


def _arrow_between(dbq: DiffBiquiver, s: int, t: int, dashed: bool) -> list[str]:
    return [a.name for a in dbq.quiver.arrows if (a.source, a.target) == (s, t) and a.is_dashed == dashed]


def bridge_witness(dbq: DiffBiquiver) -> str | None:
    """First triple i < l < m where no solid i -> m arrow has a term (l->m)(i->l) with one dashed factor."""
    for i, l, m in itertools.combinations(range(1, dbq.n + 1), 3):
        found = False
        for x in _arrow_between(dbq, i, m, False):
            for word in dbq.differential(x):
                p0, v, p1 = word
                src_v, tgt_v = dbq.quiver.arrow(v).source, dbq.quiver.arrow(v).target
                if p0.length == 1 and p1.is_trivial and (src_v, tgt_v) == (i, l):
                    found = True
                if p1.length == 1 and p0.is_trivial and (src_v, tgt_v) == (l, m):
                    found = True
        if not found:
            return f"no composite through {l} in the differentials of arrows {i} -> {m}"
    return None


def dual_counts(dbq: DiffBiquiver) -> tuple[tuple[int, int], int]:
    reg = regularize(ringel_dual(dbq))
    return reg.counts, len(reg.relations)


def dimension_witness(dbq: DiffBiquiver) -> str | None:
    n = dbq.n
    target = (n * (n - 1) // 2, n * (n - 1) // 2)
    counts, relations = dual_counts(dbq)
    if counts != target or relations:
        extra = f" with {relations} relations" if relations else ""
        return f"regularised Ringel dual has {counts}{extra}, expected {target}"
    return None


def apply_constraints(cands: Iterable[CurvelikeCandidate]) -> tuple[list[CurvelikeCandidate], list[Exclusion]]:
    """Filter in the order validity, composition, bridge, dual-dimension; record the first failure."""
    survivors, excluded = [], []
    for cand in cands:
        dbq = cand.biquiver
        report = validate(dbq)
        if not report.ok:
            excluded.append(Exclusion(cand.label, "validity", report.summary()))
            continue
        for reason, test in (("composition", composition_witness), ("bridge", bridge_witness), ("dual-dimension", dimension_witness)):
            witness = test(dbq)
            if witness is not None:
                excluded.append(Exclusion(cand.label, reason, witness))
                break
        else:
            survivors.append(cand)
    return survivors, excluded


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class NormalizationMove:
    generator: str
    correction: str
    clears: str
    effect: tuple[Fraction, ...]


def _gauge_top(dbq: DiffBiquiver) -> DiffBiquiver:
    """Restore d(tau) = sigma@phi + rho@chi by tau -> tau - X."""
    base = canonical_biquiver(4)
    target = base.d1["tau"]
    extra = dict(dbq.differential("tau"))
    add_to(extra, target, -1)
    if not extra:
        return dbq
    T = dbq.tensor
    arrow = dbq.quiver.arrow("tau")
    candidates = [w for w in T.basis(1) if (w[-1].source, w[0].target) == (arrow.source, arrow.target) and w[1] != "tau"]
    images = [T.d_word(w) for w in candidates]
    rows = sorted({x for img in images for x in img} | set(extra), key=word_key)
    A = sympy.Matrix([[img.get(x, 0) for img in images] for x in rows])
    rhs = sympy.Matrix([extra.get(x, 0) for x in rows])
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError as exc:
        raise ClassifyError("cannot restore d(tau)") from exc
    sol = sol.subs({p: 0 for p in params})
    X = {w: scalar(c) for w, c in zip(candidates, sol) if c}
    tau_bare = (trivial(arrow.target), "tau", trivial(arrow.source))
    repl = {tau_bare: Fraction(1)}
    add_to(repl, X)
    new = substitute(dbq, dashed={"tau": repl}, keep={"tau"})
    d1 = dict(new.d1)
    d1["tau"] = target
    return new.replace(d1=d1)


def apply_change(dbq: DiffBiquiver, generator: str, correction: str, mu=1) -> DiffBiquiver:
    """Change of generators g -> g + mu·correction, written back in the old names."""
    mu = scalar(mu)
    arrow = dbq.quiver.arrow(generator)
    ((word, _),) = dbq.expr(correction).items()
    if arrow.is_dashed:
        bare = (trivial(arrow.target), generator, trivial(arrow.source))
        new = substitute(dbq, dashed={generator: {bare: Fraction(1), word: -mu}}, keep={generator})
        d1 = dict(new.d1)
        acc = dict(d1.get(generator, {}))
        add_to(acc, dbq.tensor.d_word(word), mu)
        d1[generator] = acc
        new = new.replace(d1=d1)
        if dbq.n == 4:
            new = _gauge_top(new)
        return new
    (path,) = word
    gpath = Path(arrow.source, arrow.target, (generator,))
    new = substitute(dbq, solid={generator: {gpath: Fraction(1), path: -mu}}, keep={generator})
    d0 = dict(new.d0)
    acc = dict(d0.get(generator, {}))
    add_to(acc, dbq.tensor.d_path(path), mu)
    d0[generator] = acc
    return new.replace(d0=d0)


def _slot_vector(dbq: DiffBiquiver) -> tuple[Fraction, ...]:
    return tuple(_slot_value(dbq, g, t) for g, t in SLOTS[dbq.n])


def _m3_vector(dbq: DiffBiquiver) -> tuple[Fraction, ...]:
    return tuple(_slot_value(dbq, g, t) for g, t in M3_SLOTS[dbq.n])


def move_effect(cand: CurvelikeCandidate, generator: str, correction: str) -> tuple[Fraction, ...] | None:
    """Change of the m₃ slots, or None if the move disturbs the case entries."""
    dbq = cand.biquiver
    moved = apply_change(dbq, generator, correction)
    if _slot_vector(moved) != _slot_vector(dbq) or not validate(moved).ok:
        return None
    base = canonical_biquiver(dbq.n)
    if any(moved.differential(v) != base.differential(v) for v in FIXED[dbq.n]):
        return None
    before, after = _m3_vector(dbq), _m3_vector(moved)
    return tuple(y - x for x, y in zip(before, after))


def moves_for(cand: CurvelikeCandidate) -> list[NormalizationMove]:
    """Realise the clearing entries of the move table for the candidate's row.

    Each listed slot gets the first family move that reaches it and is
    independent (on the listed slots) of the moves already chosen.
    """
    if cand.n != 4 or cand.case not in MOVE_TABLE:
        return []
    # no m₃ term contains a generator the family rewrites, so only the case entries matter
    return list(_moves_for_entries(cand.coefficients))


@lru_cache(maxsize=None)
def _moves_for_entries(coefficients: tuple[Fraction, ...]) -> tuple[NormalizationMove, ...]:
    cand = CurvelikeCandidate(4, coefficients)
    letter = cand.case
    texts = [t for _, t in M3_SLOTS[4]]
    cols = [texts.index(t) for t in MOVE_TABLE[letter]]
    effects = {pair: move_effect(cand, *pair) for pair in MOVE_FAMILY}
    moves: list[NormalizationMove] = []
    for slot in MOVE_TABLE[letter]:
        k = texts.index(slot)
        for pair in MOVE_FAMILY:
            eff = effects[pair]
            if eff is None or not eff[k] or any(m.generator == pair[0] and m.correction == pair[1] for m in moves):
                continue
            rows = [[m.effect[c] for c in cols] for m in moves] + [[eff[c] for c in cols]]
            if sympy.Matrix(rows).rank() == len(rows):
                moves.append(NormalizationMove(pair[0], pair[1], slot, eff))
                break
        else:
            raise ClassifyError(f"no move clears {slot} in case {letter}")
    return tuple(moves)


def _reduce(vector, moves: list[NormalizationMove], texts) -> tuple[Fraction, ...]:
    """Subtract the unique combination of move effects that zeroes the cleared slots."""
    if not moves:
        return tuple(vector)
    cols = [texts.index(m.clears) for m in moves]
    A = sympy.Matrix([[m.effect[c] for m in moves] for c in cols])
    rhs = sympy.Matrix([vector[c] for c in cols])
    coef = A.LUsolve(rhs)
    out = list(vector)
    for c, m in zip(coef, moves):
        c = scalar(c)
        out = [y - c * x for x, y in zip(m.effect, out)]
    return tuple(out)


def class_label(cand: CurvelikeCandidate) -> str:
    letter = cand.case
    if cand.n != 4 or letter not in MOVE_TABLE:
        return letter
    texts = [t for _, t in M3_SLOTS[4]]
    open_slots = [t for t in texts if t not in MOVE_TABLE[letter]]
    if not open_slots:
        return letter
    (slot,) = open_slots
    return letter + ("2" if cand.m3[texts.index(slot)] else "1")


def normalize_class(cand: CurvelikeCandidate) -> CurvelikeCandidate:
    """Clear every m₃ slot the move table allows; rescale the remaining one to 1."""
    if cand.n != 4 or cand.case not in MOVE_TABLE:
        return cand
    texts = [t for _, t in M3_SLOTS[4]]
    moves = moves_for(cand)
    vec = _reduce(cand.m3, moves, texts)
    vec = tuple(Fraction(1) if x else Fraction(0) for x in vec)
    out = cand.with_m3(vec)
    if not validate(out.biquiver).ok:
        raise ClassifyError(f"normal form of {cand.case} is not valid")
    return out


# ---------------------------------------------------------------------------
# recognising a biquiver (used for Ringel duals)


def rename(dbq: DiffBiquiver, mapping: Mapping[str, str]) -> DiffBiquiver:
    def name(x):
        return mapping.get(x, x)

    def path(p: Path) -> Path:
        return Path(p.source, p.target, tuple(name(a) for a in p.arrows))

    def word(w):
        return tuple(path(s) if isinstance(s, Path) else name(s) for s in w)

    quiver = Quiver(dbq.n, [Arrow(name(a.name), a.source, a.target, a.degree) for a in dbq.quiver.arrows])
    relations = [{path(p): c for p, c in r.items()} for r in dbq.relations]
    d0 = {name(k): {word(w): c for w, c in v.items()} for k, v in dbq.d0.items()}
    d1 = {name(k): {word(w): c for w, c in v.items()} for k, v in dbq.d1.items()}
    return DiffBiquiver(quiver, relations, d0, d1)


def canonical_frame(dbq: DiffBiquiver) -> DiffBiquiver:
    """Rename by endpoints and rescale/gauge the dashed arrows to the fixed form."""
    n = dbq.n
    _check_n(n)
    if dbq.relations:
        raise IdentificationError(f"{len(dbq.relations)} relations remain")
    mapping = {}
    for table, dashed in ((SOLID[n], False), (DASHED[n], True)):
        for new, s, t in table:
            found = _arrow_between(dbq, s, t, dashed)
            if len(found) != 1:
                kind = "dashed" if dashed else "solid"
                raise IdentificationError(f"{len(found)} {kind} arrows {s} -> {t}")
            mapping[found[0]] = new
    if len(mapping) != len(dbq.quiver.arrows):
        raise IdentificationError("arrows between equal vertices or backwards")
    out = rename(dbq, mapping)
    if n == 3:
        alpha = _slot_value(out, "chi", "psi@phi")
        if alpha:
            out = rescale(out, {"chi": 1 / alpha})
    if n == 4:
        alpha = _slot_value(out, "chi", "psi@phi")
        beta = _slot_value(out, "sigma", "rho@psi")
        if not alpha or not beta:
            raise IdentificationError("a forced dashed composite is missing")
        out = rescale(out, {"chi": 1 / alpha, "sigma": 1 / beta})
        gamma = _slot_value(out, "tau", "sigma@phi")
        if not gamma:
            raise IdentificationError("d(tau) has no sigma@phi term")
        out = _gauge_top(rescale(out, {"tau": 1 / gamma}))
    allowed = {g: set() for g, _, _ in SOLID[n]}
    for g, text in SLOTS[n] + M3_SLOTS[n]:
        if g in allowed:
            allowed[g].add(_slot_word(n, text))
    for g, words in allowed.items():
        stray = set(out.differential(g)) - words
        if stray:
            raise IdentificationError(f"d({g}) has terms outside the slots: {', '.join(sorted(map(word_str, stray)))}")
    return out


def as_candidate(dbq: DiffBiquiver) -> CurvelikeCandidate:
    frame = canonical_frame(dbq)
    cand = CurvelikeCandidate(frame.n, _slot_vector(frame), _m3_vector(frame))
    return cand


def identify(dbq: DiffBiquiver) -> str:
    """Class label of a curve-like biquiver given in any naming."""
    cand = as_candidate(dbq)
    if cand.n == 4:
        if cand.case not in MOVE_TABLE:
            raise IdentificationError(f"case {cand.case} is not one of the classified rows")
        texts = [t for _, t in M3_SLOTS[4]]
        return class_label(cand.with_m3(_reduce(cand.m3, moves_for(cand), texts)))
    return cand.case


# ---------------------------------------------------------------------------
# the classification


@dataclass(frozen=True)
class ClassEntry:
    label: str
    candidate: CurvelikeCandidate
    ringel_dual_label: str | None = None
    flagged: bool = False

    def as_dict(self) -> dict:
        out = {
            "label": self.label,
            "differential": self.candidate.differential_terms(),
            "ringel_dual_label": self.ringel_dual_label,
        }
        if self.flagged:
            out["note"] = FLAG_NOTE
        return out


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    classes: tuple[ClassEntry, ...]
    excluded: tuple[Exclusion, ...]
    header: str = HEADER
    problems: tuple[str, ...] = field(default=())

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.classes]

    def entry(self, label: str) -> ClassEntry:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "header": self.header,
            "classes": [c.as_dict() for c in self.classes],
            "excluded": [e.as_dict() for e in self.excluded],
            "problems": list(self.problems),
        }


def ringel_dual_reindexed(dbq: DiffBiquiver) -> DiffBiquiver:
    """Regularised Ringel dual with the simples read in reversed order.

    Ringel duality reverses the order on simples.  ``ringel_dual`` keeps
    arrows pointing upwards at every step, so the dual indexed by the
    reversed order is its opposite.
    """
    return opposite(regularize(ringel_dual(dbq)).biquiver)


def _ringel_label(cand: CurvelikeCandidate) -> tuple[str | None, str | None]:
    try:
        return identify(ringel_dual_reindexed(cand.biquiver)), None
    except ClassifyError as exc:
        return None, f"{class_label(cand)}: Ringel dual not recognised ({exc})"


@lru_cache(maxsize=None)
def classify(n: int, with_duals: bool = True) -> ClassificationReport:
    _check_n(n)
    survivors, excluded = apply_constraints(enumerate_candidates(n))
    reps: dict[str, CurvelikeCandidate] = {}
    if n == 4:
        for cand in survivors:
            for m3 in itertools.product((0, 1), repeat=len(M3_SLOTS[4])):
                variant = cand.with_m3(m3)
                normal = normalize_class(variant)
                label = class_label(normal)
                if label in reps:
                    if reps[label] != normal:
                        raise ClassifyError(f"two normal forms share the label {label}")
                    if variant != normal:
                        excluded.append(Exclusion(f"{cand.case} m3={_m3_str(variant.m3)}", "move-equivalent-to", label))
                    continue
                reps[label] = normal
    else:
        for cand in survivors:
            reps[cand.label] = cand
    problems = []
    entries = []
    for label in sorted(reps):
        dual = None
        if with_duals:
            dual, problem = _ringel_label(reps[label])
            if problem:
                problems.append(problem)
        entries.append(ClassEntry(label, reps[label], dual, n == 4 and label in FLAGGED))
    return ClassificationReport(n, tuple(entries), tuple(excluded), problems=tuple(problems))


def _m3_str(m3) -> str:
    return "(" + ", ".join(str(x) for x in m3) + ")"


def ringel_pairing(report: ClassificationReport) -> dict[str, str | None]:
    """Map each class label to the label of its Ringel dual."""
    out = {}
    for entry in report.classes:
        out[entry.label] = entry.ringel_dual_label or _ringel_label(entry.candidate)[0]
    return out


def pairing_problems(pairing: Mapping[str, str | None]) -> list[str]:
    problems = []
    for a, b in pairing.items():
        if b is None:
            problems.append(f"{a}: dual not matched")
        elif b not in pairing:
            problems.append(f"{a}: dual {b} is not a class")
        elif pairing[b] != a:
            problems.append(f"{a} -> {b} -> {pairing[b]} is not an involution")
    return problems
