"""Koszul and Ringel dual presentations, regularisation and dimension data."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


from .algebra import (
    Arrow,
    Path,
    Quiver,
    add_to,
    concat,
    minimal_relations,
    scalar,
    trivial,
    word_source,
    word_str,
    word_target,
)
from .bocs import Bocs, DiffBiquiver, format_biquiver, opposite, validate
from .rep import morphism_space_dim, simple

GRADED = "graded"
UNSIGNED = "unsigned"


class DualConstructionError(RuntimeError):
    def __init__(self, message: str, generator: str | None = None):
        self.generator = generator
        super().__init__(message)


def _as_biquiver(obj) -> DiffBiquiver:
    if isinstance(obj, DiffBiquiver):
        return obj
    if isinstance(obj, Bocs):
        return obj.biquiver
    if isinstance(obj, DualPresentation):
        return obj.biquiver
    raise TypeError(f"expected a biquiver, bocs or presentation, got {type(obj).__name__}")


def flat_name(item) -> str:
    """``psi*a`` for a word, ``b*a`` for a path; used inside ``hat(...)``."""
    if isinstance(item, Path):
        return "*".join(item.arrows) if item.arrows else f"e{item.source}"
    names = []
    for slot in item:
        if isinstance(slot, Path):
            names.extend(slot.arrows)
        else:
            names.append(slot)
    return "*".join(names)


def hat(item) -> str:
    return f"hat({flat_name(item) if not isinstance(item, str) else item})"


@dataclass(frozen=True, eq=False)
class DualPresentation:
    """A dual bocs given by generators, relations and differentials.

    ``biquiver`` holds the degree-0 generators as solid arrows, the dashed
    generators, the relations and the differentials.  The grouplikes
    ``hat(e_i)`` are implicit in the bocs structure and listed separately.
    """

    biquiver: DiffBiquiver
    grouplikes: tuple[str, ...]
    kind: str = "koszul"
    convention: str = GRADED
    log: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.biquiver.n

    @property
    def degree0(self) -> list[str]:
        return [a.name for a in self.biquiver.quiver.solid]

    @property
    def dashed(self) -> list[str]:
        return [a.name for a in self.biquiver.quiver.dashed]

    @property
    def relations(self) -> tuple:
        return self.biquiver.relations

    @property
    def counts(self) -> tuple[int, int]:
        return self.biquiver.counts

    def count_matrices(self):
        return self.biquiver.count_matrices()

    def differential(self, name: str) -> dict:
        return self.biquiver.differential(name)

    def terms(self, name: str) -> dict[str, Fraction]:
        """Differential of a generator as ``{"hat(b)*hat(phi)": 1, ...}``."""
        return {word_str(w): c for w, c in self.differential(name).items()}

    def relation_terms(self) -> list[dict[str, Fraction]]:
        return [{"*".join(p.arrows): c for p, c in r.items()} for r in self.relations]

    def to_text(self) -> str:
        header = [
            f"{self.kind} dual presentation ({self.convention} signs)",
            f"degree-0 generators: {len(self.degree0)}, relations: {len(self.relations)}, dashed generators: {len(self.dashed)}",
            "grouplikes: " + " ".join(self.grouplikes),
        ] + [f"step: {s}" for s in self.log]
        return format_biquiver(self.biquiver, header)

    def with_biquiver(self, dbq: DiffBiquiver, log: Iterable[str] = ()) -> "DualPresentation":
        return DualPresentation(dbq, self.grouplikes, self.kind, self.convention, self.log + tuple(log))


# ---------------------------------------------------------------------------
# the dual construction


def koszul_dual(obj, convention: str = GRADED) -> DualPresentation:
    """Koszul dual presentation: generators dual to V̄ and rad A, relations from V̄⊗V̄.

    With ``convention="graded"`` the dual structure maps carry the signs that
    make the dual differential square to zero in general; ``"unsigned"`` uses
    +1 everywhere, which agrees with the graded one up to rescaling on small
    inputs and is rejected by the post-check when it does not square to zero.
    """
    if convention not in (GRADED, UNSIGNED):
        raise ValueError(f"unknown sign convention {convention!r}")
    dbq = _as_biquiver(obj)
    report = validate(dbq)
    if not report.ok:
        raise ValueError("input is not a valid differential biquiver: " + report.summary())
    A, T = dbq.algebra, dbq.tensor
    xs = T.basis(1)
    ws = T.basis(2)
    rad = A.radical_basis
    graded = convention == GRADED
    m_linear = Fraction(-1) if graded else Fraction(1)
    m_right = Fraction(-1) if graded else Fraction(1)

    arrows = [Arrow(hat(x), word_source(x), word_target(x), 0) for x in xs]
    arrows += [Arrow(hat(p), p.source, p.target, 1) for p in rad]
    quiver = Quiver(dbq.n, arrows)

    def solid_path(*items):
        names = tuple(hat(x) for x in items)
        return Path(word_source(items[-1]), word_target(items[0]), names)

    def dashed_term(left, p, right):
        """Word hat(left)·hat(p)·hat(right) with optional solid factors."""
        lp = solid_path(left) if left is not None else trivial(p.target)
        rp = solid_path(right) if right is not None else trivial(p.source)
        return (lp, hat(p), rp)

    # relations: one per basis element of V̄⊗V̄
    relations: list[dict] = [dict() for _ in ws]
    windex = {w: k for k, w in enumerate(ws)}
    for x in xs:
        for w, c in T.d_word(x).items():
            add_to(relations[windex[w]], {solid_path(x): c})
    for y in xs:
        for z in xs:
            if word_source(y) != word_target(z):
                continue
            for w, c in T.mul_words(y, z).items():
                add_to(relations[windex[w]], {solid_path(y, z): c})

    d0: dict[str, dict] = {hat(x): {} for x in xs}
    for p in rad:
        for x, c in T.d_path(p).items():
            add_to(d0[hat(x)], {dashed_term(None, p, None): c}, m_linear)
    for p in rad:
        for y in xs:
            if p.source != word_target(y):
                continue
            for x, c in T.mul_words((p,), y).items():
                add_to(d0[hat(x)], {dashed_term(None, p, y): c})
    for y in xs:
        for q in rad:
            if word_source(y) != q.target:
                continue
            for x, c in T.mul_words(y, (q,)).items():
                add_to(d0[hat(x)], {dashed_term(y, q, None): c}, m_right)

    d1: dict[str, dict] = {hat(p): {} for p in rad}
    for p1 in rad:
        for p2 in rad:
            for p, c in A.mul_paths(p1, p2).items():
                if p.is_trivial:
                    continue
                word = (trivial(p1.target), hat(p1), trivial(p1.source), hat(p2), trivial(p2.source))
                add_to(d1[hat(p)], {word: c})

    dual = DiffBiquiver(quiver, relations, d0, d1)
    check = validate(dual)
    if not check.ok:
        bad = check.violations[0]
        raise DualConstructionError(
            f"dual differential does not square to zero ({convention} signs): {bad}", bad.generator
        )
    grouplikes = tuple(f"hat(e{i})" for i in range(1, dbq.n + 1))
    return DualPresentation(dual, grouplikes, "koszul", convention)


def ringel_dual(obj, convention: str = GRADED) -> DualPresentation:
    """opposite ∘ koszul_dual ∘ opposite."""
    dbq = _as_biquiver(obj)
    inner = koszul_dual(opposite(dbq), convention)
    n = dbq.n
    grouplikes = tuple(f"hat(e{n + 1 - i})" for i in range(1, n + 1))[::-1]
    return DualPresentation(opposite(inner.biquiver), grouplikes, "ringel", convention, inner.log)


def as_bocs(obj) -> Bocs:
    return Bocs(_as_biquiver(obj))


# ---------------------------------------------------------------------------
# substitutions on raw data


def substitute(
    dbq: DiffBiquiver,
    solid: Mapping[str, Mapping[Path, Fraction] | None] | None = None,
    dashed: Mapping[str, Mapping[tuple, Fraction]] | None = None,
    remove: Iterable[str] = (),
    keep: Iterable[str] = (),
) -> DiffBiquiver:
    """Substitute generators everywhere and drop the ``remove`` arrows.

    ``solid[g]`` is a raw path combination (None or {} for zero) and
    ``dashed[v]`` a raw combination of degree-one words.  Substituted
    generators are dropped too unless listed in ``keep``, which turns the
    substitution into a change of generators.
    """
    solid = dict(solid or {})
    dashed = dict(dashed or {})
    remove = set(remove)
    keep = set(keep)
    quiver = dbq.quiver
    def sub_path(p: Path) -> dict:
        if not any(a in solid for a in p.arrows):
            return {p: Fraction(1)}
        partial = {trivial(p.source): Fraction(1)}
        for name in reversed(p.arrows):
            arrow = quiver.arrow(name)
            if name in solid:
                options = list((solid[name] or {}).items())
            else:
                options = [(Path(arrow.source, arrow.target, (name,)), Fraction(1))]
            nxt: dict = {}
            for q, c in partial.items():
                for r, d in options:
                    new = concat(r, q)
                    if new is not None:
                        add_to(nxt, {new: c * d})
            partial = nxt
        return partial

    def sub_word(word: tuple) -> dict:
        partial: dict = {(): Fraction(1)}
        for slot in word:
            nxt: dict = {}
            if isinstance(slot, Path):
                options = sub_path(slot)
                for w, c in partial.items():
                    for r, d in options.items():
                        if w:
                            prev = w[-1]
                            if isinstance(prev, Path):
                                joined = concat(prev, r)
                                if joined is None:
                                    continue
                                add_to(nxt, {w[:-1] + (joined,): c * d})
                                continue
                        add_to(nxt, {w + (r,): c * d})
            elif slot in dashed:
                for w, c in partial.items():
                    for rw, d in dashed[slot].items():
                        r0, u, r1 = rw
                        prev = w[-1]
                        joined = concat(prev, r0)
                        if joined is None:
                            continue
                        add_to(nxt, {w[:-1] + (joined, u, r1): c * d})
            else:
                for w, c in partial.items():
                    add_to(nxt, {w + (slot,): c})
            partial = nxt
        return partial

    def sub_elem(elem: Mapping) -> dict:
        out: dict = {}
        for w, c in elem.items():
            add_to(out, sub_word(w), c)
        return out

    relations = []
    for rel in dbq.relations:
        new: dict = {}
        for p, c in rel.items():
            add_to(new, sub_path(p), c)
        if new:
            relations.append(new)
    gone = (remove | set(solid) | set(dashed)) - keep
    d0 = {k: sub_elem(v) for k, v in dbq.d0.items() if k not in gone}
    d1 = {k: sub_elem(v) for k, v in dbq.d1.items() if k not in gone}
    new_quiver = Quiver(dbq.n, [a for a in quiver.arrows if a.name not in gone])
    return DiffBiquiver(new_quiver, relations, d0, d1)


def rescale(dbq: DiffBiquiver, factors: Mapping[str, Fraction]) -> DiffBiquiver:
    """Replace each generator x by t·x (x_new = t_x · x_old)."""
    factors = {k: scalar(v) for k, v in factors.items()}

    def weight(word) -> Fraction:
        w = Fraction(1)
        for slot in word:
            names = slot.arrows if isinstance(slot, Path) else (slot,)
            for name in names:
                if name in factors:
                    w /= factors[name]
        return w

    d0 = {k: {w: c * weight(w) * factors.get(k, 1) for w, c in v.items()} for k, v in dbq.d0.items()}
    d1 = {k: {w: c * weight(w) * factors.get(k, 1) for w, c in v.items()} for k, v in dbq.d1.items()}
    relations = [{p: c * weight((p,)) for p, c in r.items()} for r in dbq.relations]
    return DiffBiquiver(dbq.quiver, relations, d0, d1)


# ---------------------------------------------------------------------------
# regularisation


def _generator_rank(dbq: DiffBiquiver):
    index = {a.name: k for k, a in enumerate(dbq.quiver.arrows)}
    return lambda name: (dbq.quiver.arrow(name).source, dbq.quiver.arrow(name).target, index[name])


def find_superfluous(obj) -> list[tuple[str, str, Fraction]]:
    """Pairs (a, v, λ) with ∂a = λv + (terms not involving v), λ ≠ 0."""
    dbq = _as_biquiver(obj)
    rank = _generator_rank(dbq)
    out = []
    for a in dbq.quiver.solid:
        da = dbq.differential(a.name)
        for v in dbq.quiver.dashed:
            if (v.source, v.target) != (a.source, a.target):
                continue
            lam = da.get((trivial(v.target), v.name, trivial(v.source)), 0)
            if lam:
                out.append((a.name, v.name, lam))
    out.sort(key=lambda t: (rank(t[0]), rank(t[1])))
    return out


def regularize_once(obj, pair: tuple[str, str, Fraction]):
    """Remove a superfluous pair: v := −(1/λ)(∂a − λv), a := 0."""
    dbq = _as_biquiver(obj)
    a, v, lam = pair
    lam = scalar(lam)
    arrow = dbq.quiver.arrow(v)
    bare = (trivial(arrow.target), v, trivial(arrow.source))
    rest = {w: c for w, c in dbq.differential(a).items() if w != bare}
    if dbq.differential(a).get(bare, 0) != lam:
        raise ValueError(f"({a}, {v}) is not a superfluous pair with coefficient {lam}")
    for w in rest:
        if v in w[1::2]:
            raise ValueError(f"{v} occurs in a non-linear term of d({a})")
    repl = {w: -c / lam for w, c in rest.items()}
    new = substitute(dbq, solid={a: None}, dashed={v: repl}, remove={a, v})
    if isinstance(obj, DualPresentation):
        return obj.with_biquiver(new, [f"removed superfluous pair ({a}, {v}) with coefficient {lam}"])
    return new


def _linear_part(rel: Mapping[Path, Fraction]) -> dict[str, Fraction]:
    return {p.arrows[0]: c for p, c in rel.items() if len(p.arrows) == 1}


def eliminate_linear_relations(dbq: DiffBiquiver, order: str = "min") -> tuple[DiffBiquiver, list[str]]:
    """Solve relations with a linear term for one generator and substitute it away."""
    log = []
    while True:
        rank = _generator_rank(dbq)
        target = None
        for rel in dbq.relations:
            lin = _linear_part(rel)
            if lin:
                pick = (min if order == "min" else max)(lin, key=rank)
                target = (rel, pick, lin[pick])
                break
        if target is None:
            return dbq, log
        rel, g, lam = target
        g_path = Path(dbq.quiver.arrow(g).source, dbq.quiver.arrow(g).target, (g,))
        repl = {p: -c / lam for p, c in rel.items() if p != g_path}
        others = [r for r in dbq.relations if r is not rel]
        stripped = dbq.replace(relations=others)
        dbq = substitute(stripped, solid={g: repl}, remove={g})
        log.append(f"eliminated {g} using its relation")


def regularize(obj, order: str = "min"):
    """Eliminate linear relations and superfluous pairs until none remain.

    ``order`` picks the minimal (default) or maximal pair in
    (source, target, declaration) order at each step.
    """
    if order not in ("min", "max"):
        raise ValueError("order must be 'min' or 'max'")
    dbq = _as_biquiver(obj)
    log: list[str] = []
    while True:
        dbq, steps = eliminate_linear_relations(dbq, order)
        log.extend(steps)
        pairs = find_superfluous(dbq)
        if not pairs:
            break
        a, v, lam = pairs[0] if order == "min" else pairs[-1]
        dbq = regularize_once(dbq, (a, v, lam))
        log.append(f"removed superfluous pair ({a}, {v}) with coefficient {lam}")
    kept = minimal_relations(dbq.quiver, dbq.relations)
    if len(kept) < len(dbq.relations):
        log.append(f"dropped {len(dbq.relations) - len(kept)} redundant relations")
        dbq = dbq.replace(relations=kept)
    report = validate(dbq)
    if not report.ok:
        raise DualConstructionError("regularised data fails validation: " + report.summary())
    if isinstance(obj, DualPresentation):
        return obj.with_biquiver(dbq, log)
    return dbq


def is_regular(obj) -> bool:
    return not find_superfluous(obj)


# ---------------------------------------------------------------------------
# dimension data


def hom_between_simples(obj, i: int, l: int) -> int:
    """dim Hom(L(i), L(l)) in the representation category, by brute force."""
    b = obj if isinstance(obj, Bocs) else Bocs(_as_biquiver(obj))
    return morphism_space_dim(b, simple(b, i), simple(b, l))


def generator_count_check(obj) -> bool:
    dbq = _as_biquiver(obj)
    b = Bocs(dbq)
    total = sum(hom_between_simples(b, i, l) for i in range(1, dbq.n + 1) for l in range(1, dbq.n + 1) if i != l)
    return total == len(dbq.quiver.dashed)


@dataclass(frozen=True)
class DimReport:
    solid_counts: tuple[tuple[int, ...], ...]
    dashed_counts: tuple[tuple[int, ...], ...]
    hom: tuple[tuple[int, ...], ...]
    ext: tuple[tuple[int, ...], ...]
    dim_A: int
    dim_vbar: int
    right_dim: int
    regularised: bool = False

    def as_dict(self) -> dict:
        return {
            "solid_counts": [list(r) for r in self.solid_counts],
            "dashed_counts": [list(r) for r in self.dashed_counts],
            "hom": [list(r) for r in self.hom],
            "ext1": [list(r) for r in self.ext],
            "dim_A": self.dim_A,
            "dim_Vbar": self.dim_vbar,
            "right_algebra_dim": self.right_dim,
            "regularised_first": self.regularised,
        }


def hom_ext_matrices(obj) -> DimReport:
    """Hom and Ext¹ between standard modules, read off a regular bocs."""
    dbq = _as_biquiver(obj)
    regularised = False
    if not is_regular(dbq) or any(_linear_part(r) for r in dbq.relations):
        warnings.warn("input is not regular; regularising before reading dimensions", stacklevel=2)
        dbq = regularize(dbq)
        regularised = True
    b = Bocs(dbq)
    n = dbq.n
    solid, dashed = dbq.count_matrices()
    hom = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        for l in range(1, n + 1):
            hom[i - 1][l - 1] = hom_between_simples(b, i, l)
    ext = [list(r) for r in solid]
    total, _ = right_algebra_dim(b)
    return DimReport(
        solid,
        dashed,
        tuple(map(tuple, hom)),
        tuple(map(tuple, ext)),
        b.algebra.dim,
        len(b.vbar_basis),
        total,
        regularised,
    )


def right_algebra_dim(obj) -> tuple[int, dict[str, int]]:
    """dim R = dim A + Σ_v dim(e_s A)·dim(e_t A) over dashed v: s ⇢ t."""
    dbq = _as_biquiver(obj)
    A = dbq.algebra
    parts = {"A": A.dim}
    for v in dbq.quiver.dashed:
        parts[v.name] = len(A.ending_at(v.source)) * len(A.ending_at(v.target))
    return sum(parts.values()), parts
