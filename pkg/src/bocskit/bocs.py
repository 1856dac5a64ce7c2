"""Differential biquivers, the ``.bocs`` text format and the bocs they define."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

import sympy

from .algebra import (
    Arrow,
    Path,
    PathAlgebra,
    Quiver,
    QuiverError,
    RelationError,
    TensorAlgebra,
    add_to,
    build_path_algebra,
    concat,
    element_str,
    path_key,
    scalar,
    to_sympy,
    trivial,
    word_key,
    word_source,
    word_str,
    word_target,
)

OMEGA = "ω"


class BocsParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# words built from arrow names


def build_word(quiver: Quiver, factors: list[str], boundaries: Iterable[int] = ()) -> tuple:
    """Turn a product of arrow names (written order) into a raw word.

    ``boundaries`` lists factor positions where an ``@`` sign stood; each side
    of an ``@`` must contain exactly one dashed arrow.
    """
    if not factors:
        raise QuiverError("empty term")
    for name in factors:
        if name not in quiver:
            raise QuiverError(f"unknown arrow {name!r}")
    cuts = sorted(set(boundaries))
    pieces, start = [], 0
    for cut in cuts + [len(factors)]:
        pieces.append(factors[start:cut])
        start = cut
    if cuts:
        for piece in pieces:
            if sum(quiver.arrow(x).is_dashed for x in piece) != 1:
                raise QuiverError("each side of '@' needs exactly one dashed arrow")
    groups: list = [[]]
    for name in factors:
        if quiver.arrow(name).is_dashed:
            groups.append(name)
            groups.append([])
        else:
            groups[-1].append(name)
    dashed = [quiver.arrow(g) for g in groups[1::2]]
    slots: list = []
    for idx, g in enumerate(groups):
        if isinstance(g, str):
            slots.append(g)
            continue
        if g:
            slots.append(path_of(quiver, g))
            continue
        k = idx // 2
        if k < len(dashed):
            slots.append(trivial(dashed[k].target))
        elif dashed:
            slots.append(trivial(dashed[-1].source))
        else:
            raise QuiverError("empty term")
    word = tuple(slots)
    for left, right in zip(word, word[1:]):
        lsrc = left.source if isinstance(left, Path) else quiver.arrow(left).source
        rtgt = right.target if isinstance(right, Path) else quiver.arrow(right).target
        if lsrc != rtgt:
            raise QuiverError(f"{'*'.join(factors)} is not composable")
    return word


def path_of(quiver: Quiver, names: list[str]) -> Path:
    p = None
    for name in reversed(names):
        a = quiver.arrow(name)
        if a.is_dashed:
            raise QuiverError(f"{name!r} is dashed, a solid arrow was expected")
        step = Path(a.source, a.target, (name,))
        if p is None:
            p = step
        else:
            nxt = concat(step, p)
            if nxt is None:
                raise QuiverError(f"{'*'.join(names)} is not a path")
            p = nxt
    return p


def word_endpoints(quiver: Quiver, word: tuple) -> tuple[int, int]:
    return word_source(word), word_target(word)


# ---------------------------------------------------------------------------
# expression parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<op>[-+*@/])|(?P<name>[^\W\d][\w'.]*))", re.UNICODE)


def _read_name_suffix(text: str, pos: int) -> int:
    """Extend a name over a balanced parenthesised suffix such as ``hat(b*a)``."""
    while pos < len(text) and text[pos] == "(":
        depth = 0
        for k in range(pos, len(text)):
            if text[k] == "(":
                depth += 1
            elif text[k] == ")":
                depth -= 1
                if depth == 0:
                    pos = k + 1
                    break
        else:
            raise BocsParseError("unbalanced parenthesis", column=pos + 1)
    return pos


def tokenize(text: str, offset: int = 0) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise BocsParseError(f"unexpected character {text[pos]!r}", column=offset + pos + 1)
        col = offset + m.start(m.lastgroup) + 1
        if m.lastgroup == "name":
            end = _read_name_suffix(text, m.end())
            tokens.append(("name", text[m.start("name") : end], col))
            pos = end
        else:
            tokens.append((m.lastgroup, m.group(m.lastgroup), col))
            pos = m.end()
    return tokens


def parse_expression(quiver: Quiver, text: str, offset: int = 0) -> list[tuple[Fraction, list[str], list[int]]]:
    """Parse ``[+-] [coef] f1 * f2 @ f3 ...`` sums into (coef, factors, @-positions)."""
    tokens = tokenize(text, offset)
    if len(tokens) == 1 and tokens[0][:2] == ("num", "0"):
        return []
    terms = []
    k = 0

    def err(msg, tok=None):
        col = tok[2] if tok else offset + len(text) + 1
        return BocsParseError(msg, column=col)

    if not tokens:
        raise err("empty expression")
    while k < len(tokens):
        sign = Fraction(1)
        if tokens[k][0] == "op" and tokens[k][1] in "+-":
            sign = Fraction(-1 if tokens[k][1] == "-" else 1)
            k += 1
        elif terms:
            raise err("expected '+' or '-'", tokens[k])
        coef = Fraction(1)
        if k < len(tokens) and tokens[k][0] == "num":
            num = int(tokens[k][1])
            k += 1
            den = 1
            if k < len(tokens) and tokens[k][1] == "/":
                if k + 1 >= len(tokens) or tokens[k + 1][0] != "num":
                    raise err("malformed rational", tokens[k])
                den = int(tokens[k + 1][1])
                if den == 0:
                    raise err("zero denominator", tokens[k + 1])
                k += 2
            coef = Fraction(num, den)
            if k < len(tokens) and tokens[k][1] == "*":
                k += 1
        factors, cuts = [], []
        while True:
            if k >= len(tokens) or tokens[k][0] != "name":
                raise err("expected an arrow name", tokens[k] if k < len(tokens) else None)
            factors.append(tokens[k][1])
            k += 1
            if k < len(tokens) and tokens[k][1] in ("*", "@"):
                if tokens[k][1] == "@":
                    cuts.append(len(factors))
                k += 1
                continue
            break
        terms.append((sign * coef, factors, cuts))
    return terms


# ---------------------------------------------------------------------------
# differential biquivers


@dataclass(frozen=True)
class Violation:
    generator: str
    kind: str
    residue: Mapping = field(default_factory=dict)
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.kind} at {self.generator}"
        if self.detail:
            text += f": {self.detail}"
        return text


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "pass"
        return "fail\n" + "\n".join(f"  {v}" for v in self.violations)


def _clean(elem: Mapping) -> dict:
    return {k: scalar(v) for k, v in elem.items() if v}


class DiffBiquiver:
    """Quiver with relations and a degree one differential on the generators.

    ``d0[a]`` is a combination of degree one words (``p*v*q``) for each solid
    arrow ``a``; ``d1[v]`` is a combination of degree two words for each
    dashed arrow ``v``.  Words may contain non-standard paths; they are
    normalised in :attr:`tensor`.
    """

    def __init__(self, quiver: Quiver, relations: Iterable[Mapping[Path, Fraction]] = (), d0=None, d1=None):
        self.quiver = quiver
        self.relations = tuple(r for r in (_clean(r) for r in relations) if r)
        d0 = {k: _clean(v) for k, v in (d0 or {}).items()}
        d1 = {k: _clean(v) for k, v in (d1 or {}).items()}
        for table, degree in ((d0, 0), (d1, 1)):
            for name, value in table.items():
                arrow = quiver.arrow(name)
                if arrow.degree != degree:
                    kind = "solid" if degree == 0 else "dashed"
                    raise QuiverError(f"d({name}) given but {name!r} is not {kind}")
                for word in value:
                    self._check_word(arrow, word, degree + 1)
        self.d0 = MappingProxyType({k: v for k, v in d0.items() if v})
        self.d1 = MappingProxyType({k: v for k, v in d1.items() if v})

    def _check_word(self, arrow: Arrow, word: tuple, degree: int):
        if len(word) != 2 * degree + 1:
            raise QuiverError(f"d({arrow.name}) has a term of the wrong degree: {word_str(word)}")
        for idx, slot in enumerate(word):
            if idx % 2 == 0:
                if not isinstance(slot, Path):
                    raise QuiverError(f"d({arrow.name}): malformed term")
                for a in slot.arrows:
                    if self.quiver.arrow(a).is_dashed:
                        raise QuiverError(f"d({arrow.name}): dashed arrow inside a path")
            elif not self.quiver.arrow(slot).is_dashed:
                raise QuiverError(f"d({arrow.name}): {slot!r} is not dashed")
        for left, right in zip(word, word[1:]):
            lsrc = left.source if isinstance(left, Path) else self.quiver.arrow(left).source
            rtgt = right.target if isinstance(right, Path) else self.quiver.arrow(right).target
            if lsrc != rtgt:
                raise QuiverError(f"d({arrow.name}): term {word_str(word)} is not composable")
        if (word_source(word), word_target(word)) != (arrow.source, arrow.target):
            raise QuiverError(
                f"d({arrow.name}): term {word_str(word)} has endpoints "
                f"{word_source(word)} -> {word_target(word)}, expected {arrow.source} -> {arrow.target}"
            )

    # -- derived structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return self.quiver.n

    @cached_property
    def algebra(self) -> PathAlgebra:
        return build_path_algebra(self.quiver, self.relations)

    @cached_property
    def tensor(self) -> TensorAlgebra:
        base = TensorAlgebra(self.algebra, self.quiver.dashed)
        d0 = {k: base.normalize(v) for k, v in self.d0.items()}
        d1 = {k: base.normalize(v) for k, v in self.d1.items()}
        return TensorAlgebra(self.algebra, self.quiver.dashed, d0, d1)

    def term(self, text: str) -> tuple:
        """Raw word for a single product like ``"psi*a"`` or ``"rho@psi*a"``."""
        ((coef, factors, cuts),) = parse_expression(self.quiver, text)
        return build_word(self.quiver, factors, cuts)

    def expr(self, text: str) -> dict:
        """Normalised element for an expression like ``"psi*a + b*phi"``."""
        out: dict = {}
        for coef, factors, cuts in parse_expression(self.quiver, text):
            add_to(out, self.tensor.normalize_word(build_word(self.quiver, factors, cuts)), coef)
        return out

    def differential(self, name: str) -> dict:
        """Normalised differential of a generator."""
        arrow = self.quiver.arrow(name)
        table = self.tensor.d1 if arrow.is_dashed else self.tensor.d0
        return dict(table.get(name, {}))

    def count_matrices(self) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
        """(solid, dashed) arrow counts indexed [source-1][target-1]."""
        n = self.n
        solid = [[0] * n for _ in range(n)]
        dashed = [[0] * n for _ in range(n)]
        for a in self.quiver.arrows:
            (dashed if a.is_dashed else solid)[a.source - 1][a.target - 1] += 1
        return tuple(map(tuple, solid)), tuple(map(tuple, dashed))

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.quiver.solid), len(self.quiver.dashed)

    def structural_key(self) -> tuple:
        return (
            self.quiver.key,
            tuple(sorted(tuple(sorted(r.items(), key=lambda t: path_key(t[0]))) for r in self.relations)),
            tuple(sorted((k, tuple(sorted(v.items(), key=lambda t: word_key(t[0])))) for k, v in self.d0.items())),
            tuple(sorted((k, tuple(sorted(v.items(), key=lambda t: word_key(t[0])))) for k, v in self.d1.items())),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffBiquiver) and self.structural_key() == other.structural_key()

    def __hash__(self) -> int:
        return hash(self.structural_key())

    def __repr__(self) -> str:
        return f"DiffBiquiver(n={self.n}, solid={len(self.quiver.solid)}, dashed={len(self.quiver.dashed)}, relations={len(self.relations)})"

    def replace(self, *, quiver=None, relations=None, d0=None, d1=None) -> "DiffBiquiver":
        return DiffBiquiver(
            quiver or self.quiver,
            self.relations if relations is None else relations,
            dict(self.d0) if d0 is None else d0,
            dict(self.d1) if d1 is None else d1,
        )


# ---------------------------------------------------------------------------
# text format


def parse_biquiver(text: str) -> DiffBiquiver:
    n = None
    arrows: list[Arrow] = []
    pending: list[tuple[int, str, str, str, int]] = []
    decl = re.compile(r"^(solid|dashed)\s+(.+?)\s*:\s*(-?\d+)\s*->\s*(-?\d+)\s*$")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if stripped.startswith("vertices"):
            m = re.fullmatch(r"vertices\s+(\d+)\s*", stripped)
            if not m:
                raise BocsParseError("expected 'vertices <n>'", lineno, indent + 1)
            if n is not None:
                raise BocsParseError("vertex count given twice", lineno, indent + 1)
            n = int(m.group(1))
            continue
        m = decl.match(stripped)
        if m:
            kind, name, s, t = m.groups()
            if re.search(r"[\s*@+]", name) or name.startswith("-"):
                raise BocsParseError(f"invalid arrow name {name!r}", lineno, indent + m.start(2) + 1)
            if name == OMEGA:
                raise BocsParseError(f"{OMEGA!r} is reserved for the grouplike", lineno, indent + m.start(2) + 1)
            arrows.append(Arrow(name, int(s), int(t), 0 if kind == "solid" else 1))
            pending.append((lineno, "decl", name, "", indent + 1))
            continue
        if stripped.startswith("relation"):
            body = stripped[len("relation") :]
            if body and not body[0].isspace():
                raise BocsParseError("expected 'relation <expression>'", lineno, indent + 1)
            pending.append((lineno, "relation", "", body, indent + len("relation") + 1))
            continue
        if stripped.startswith("d("):
            end = _read_name_suffix(stripped, 1)
            name = stripped[2 : end - 1].strip()
            rest = stripped[end:]
            eq = rest.find("=")
            if eq < 0 or rest[:eq].strip():
                raise BocsParseError("expected 'd(<name>) = <expression>'", lineno, indent + end + 1)
            pending.append((lineno, "diff", name, rest[eq + 1 :], indent + end + eq + 2))
            continue
        raise BocsParseError(f"unrecognised line {stripped!r}", lineno, indent + 1)
    if n is None:
        raise BocsParseError("missing 'vertices <n>' line")
    try:
        quiver = Quiver(n, arrows)
    except QuiverError as exc:
        line = next((p[0] for p in pending if p[1] == "decl"), None)
        bad = re.search(r"'([^']*)'", str(exc))
        if bad:
            line = next((p[0] for p in pending if p[1] == "decl" and p[2] == bad.group(1)), line)
        raise BocsParseError(str(exc), line) from None

    relations, d0, d1 = [], {}, {}
    for lineno, kind, name, body, col in pending:
        if kind == "decl":
            continue
        try:
            terms = parse_expression(quiver, body, col - 1)
            if kind == "relation":
                rel: dict = {}
                for coef, factors, cuts in terms:
                    if cuts:
                        raise QuiverError("'@' is not allowed in a relation")
                    add_to(rel, {path_of(quiver, factors): coef})
                relations.append(rel)
                continue
            arrow = quiver.arrow(name)
            value: dict = {}
            for coef, factors, cuts in terms:
                word = build_word(quiver, factors, cuts)
                want = 2 if arrow.is_dashed else 1
                if len(word) // 2 != want:
                    raise QuiverError(
                        f"d({name}) needs terms with {want} dashed factor{'s' if want > 1 else ''}, got {word_str(word)}"
                    )
                if (word_source(word), word_target(word)) != (arrow.source, arrow.target):
                    raise QuiverError(f"d({name}): term {word_str(word)} has mismatched endpoints")
                add_to(value, {word: coef})
            table = d1 if arrow.is_dashed else d0
            if name in table:
                raise QuiverError(f"d({name}) given twice")
            table[name] = value
        except BocsParseError as exc:
            raise BocsParseError(str(exc).split(": ", 1)[-1], lineno, exc.column) from None
        except (QuiverError, RelationError) as exc:
            raise BocsParseError(str(exc), lineno, col) from None
    try:
        return DiffBiquiver(quiver, relations, d0, d1)
    except (QuiverError, RelationError) as exc:
        raise BocsParseError(str(exc)) from None


def _path_expr(elem: Mapping[Path, Fraction]) -> str:
    return element_str(elem, path_key, lambda p: "*".join(p.arrows))


def format_biquiver(dbq: DiffBiquiver, header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"vertices {dbq.n}")
    for a in dbq.quiver.solid:
        lines.append(f"solid {a.name}: {a.source} -> {a.target}")
    for a in dbq.quiver.dashed:
        lines.append(f"dashed {a.name}: {a.source} -> {a.target}")
    for rel in dbq.relations:
        lines.append(f"relation {_path_expr(rel)}")
    for a in dbq.quiver.solid:
        if a.name in dbq.d0:
            lines.append(f"d({a.name}) = {element_str(dbq.d0[a.name])}")
    for a in dbq.quiver.dashed:
        if a.name in dbq.d1:
            lines.append(f"d({a.name}) = {element_str(dbq.d1[a.name])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


def validate(dbq: DiffBiquiver) -> ValidationReport:
    """Check that the Leibniz extension of the differential squares to zero."""
    try:
        tensor = dbq.tensor
    except RelationError as exc:
        return ValidationReport((Violation("relations", "relation", {}, str(exc)),))
    violations = []
    for k, rel in enumerate(dbq.relations, start=1):
        residue: dict = {}
        for p, c in rel.items():
            add_to(residue, tensor.d_raw_path(p), c)
        if residue:
            violations.append(
                Violation(f"relation {k}", "d(relation) != 0", residue, f"d({_path_expr(rel)}) = {element_str(residue)}")
            )
    for a in dbq.quiver.solid:
        residue = tensor.d(tensor.d0.get(a.name, {}))
        if residue:
            violations.append(Violation(a.name, "d^2 != 0", residue, f"d^2({a.name}) = {element_str(residue)}"))
    for v in dbq.quiver.dashed:
        residue = tensor.d(tensor.d1.get(v.name, {}))
        if residue:
            violations.append(Violation(v.name, "d^2 != 0", residue, f"d^2({v.name}) = {element_str(residue)}"))
    return ValidationReport(tuple(violations))


# ---------------------------------------------------------------------------
# linear maps


class LinearMap:
    """Exact matrix between two ordered bases, stored column by column."""

    def __init__(self, domain: Iterable, codomain: Iterable, columns: Mapping):
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        self._row = {b: k for k, b in enumerate(self.codomain)}
        self.columns = {}
        for x in self.domain:
            col = {k: v for k, v in columns.get(x, {}).items() if v}
            for y in col:
                if y not in self._row:
                    raise ValueError(f"image of {x!r} leaves the codomain basis")
            self.columns[x] = col

    def __call__(self, elem: Mapping) -> dict:
        out: dict = {}
        for x, c in elem.items():
            add_to(out, self.columns[x], c)
        return out

    def matrix(self) -> sympy.Matrix:
        m = sympy.zeros(len(self.codomain), len(self.domain))
        for j, x in enumerate(self.domain):
            for y, c in self.columns[x].items():
                m[self._row[y], j] = to_sympy(c)
        return m

    def compose(self, inner: "LinearMap") -> "LinearMap":
        return LinearMap(inner.domain, self.codomain, {x: self(inner.columns[x]) for x in inner.domain})

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def rank(self) -> int:
        return self.matrix().rank() if self.domain and self.codomain else 0


# ---------------------------------------------------------------------------
# the bocs of a differential biquiver


class Bocs:
    """The bocs (A, V) with V = A·ω ⊕ V̄ and the twisted right action ω·a = aω − ∂a.

    Words of the coring use the dashed names together with the grouplike
    :data:`OMEGA`; in normal form every ω is followed by a trivial path.
    ``mu_overrides`` replaces μ on selected dashed generators, which is only
    useful for building deliberately inconsistent examples.
    """

    def __init__(self, dbq: DiffBiquiver, mu_overrides: Mapping[str, Mapping] | None = None, _checked: bool = False):
        if not _checked:
            report = validate(dbq)
            if not report.ok:
                raise ValueError("refusing to build a bocs from invalid data: " + report.summary())
        self.biquiver = dbq
        self.quiver = dbq.quiver
        self.n = dbq.n
        self.algebra = dbq.algebra
        self.tensor = dbq.tensor
        self.mu_overrides = MappingProxyType({k: dict(v) for k, v in (mu_overrides or {}).items()})

    # -- bases -----------------------------------------------------------------

    @cached_property
    def vbar_basis(self) -> tuple:
        return self.tensor.basis(1)

    @cached_property
    def tensor_square_basis(self) -> tuple:
        return self.tensor.basis(2)

    @cached_property
    def v_basis(self) -> tuple:
        omegas = tuple((p, OMEGA, trivial(p.source)) for p in self.algebra.basis)
        return omegas + self.vbar_basis

    def vbar_dims(self) -> dict[tuple[int, int], int]:
        dims: dict[tuple[int, int], int] = {}
        for w in self.vbar_basis:
            key = (word_source(w), word_target(w))
            dims[key] = dims.get(key, 0) + 1
        return dims

    def omega(self, vertex: int | None = None) -> dict:
        verts = range(1, self.n + 1) if vertex is None else [vertex]
        return {(trivial(i), OMEGA, trivial(i)): Fraction(1) for i in verts}

    # -- coring words ------------------------------------------------------------

    def _rmul_path(self, word: tuple, q: Path) -> dict:
        prod = self.algebra.mul_paths(word[-1], q)
        if len(word) == 1:
            return {(r,): c for r, c in prod.items()}
        if word[-2] != OMEGA:
            return {word[:-1] + (r,): c for r, c in prod.items()}
        out: dict = {}
        prefix = word[:-2]
        for r, c in prod.items():
            if r.is_trivial:
                add_to(out, {word[:-1] + (r,): c})
                continue
            # ω·r = r·ω − ∂(r)
            for w, c2 in self._rmul_path(prefix, r).items():
                add_to(out, {w + (OMEGA, trivial(r.source)): c * c2})
            for dw, c3 in self.tensor.d_path(r).items():
                add_to(out, self.concat(prefix, dw), -c * c3)
        return out

    def concat(self, left: tuple, right: tuple) -> dict:
        acc = self._rmul_path(left, right[0])
        for k in range(1, len(right), 2):
            g, q = right[k], right[k + 1]
            nxt: dict = {}
            for w, c in acc.items():
                base = w + (g, trivial(q.target))
                add_to(nxt, self._rmul_path(base, q), c)
            acc = nxt
        return acc

    def vmul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for u, c in x.items():
            for w, d in y.items():
                add_to(out, self.concat(u, w), c * d)
        return out

    def lmul_path(self, p: Path, word: tuple) -> dict:
        return {(r,) + word[1:]: c for r, c in self.algebra.mul_paths(p, word[0]).items()}

    # -- comultiplication and counit ----------------------------------------------

    def _mu_generator(self, g: str, vertex_t: int, vertex_s: int) -> dict:
        if g == OMEGA:
            e = trivial(vertex_t)
            return {(e, OMEGA, e, OMEGA, e): Fraction(1)}
        if g in self.mu_overrides:
            return self.tensor.normalize(self.mu_overrides[g]) if self.mu_overrides[g] else {}
        et, es = trivial(vertex_t), trivial(vertex_s)
        out = {(et, OMEGA, et, g, es): Fraction(1), (et, g, es, OMEGA, es): Fraction(1)}
        add_to(out, self.tensor.d1.get(g, {}))
        return out

    def mu_word(self, word: tuple) -> dict:
        p0, g, p1 = word
        if g == OMEGA:
            vt = vs = p0.source
        else:
            a = self.quiver.arrow(g)
            vt, vs = a.target, a.source
        out: dict = {}
        for w, c in self._mu_generator(g, vt, vs).items():
            for w2, c2 in self.lmul_path(p0, w).items():
                add_to(out, self._rmul_path(w2, p1), c * c2)
        return out

    def mu(self, elem: Mapping) -> dict:
        out: dict = {}
        for w, c in elem.items():
            add_to(out, self.mu_word(w), c)
        return out

    def eps(self, elem: Mapping) -> dict:
        out: dict = {}
        for (p0, g, p1), c in elem.items():
            if g == OMEGA:
                add_to(out, self.algebra.mul_paths(p0, p1), c)
        return out

    # -- structure maps as matrices -------------------------------------------------

    def _pairs(self, left, right):
        return [(x, y) for x in left for y in right if _src(x) == _tgt(y)]

    @cached_property
    def m_A(self) -> LinearMap:
        A = self.algebra.basis
        dom = self._pairs(A, A)
        return LinearMap(dom, A, {(p, q): self.algebra.mul_paths(p, q) for p, q in dom})

    @cached_property
    def m_l(self) -> LinearMap:
        dom = self._pairs(self.algebra.basis, self.vbar_basis)
        return LinearMap(dom, self.vbar_basis, {(p, x): self.tensor.mul_words((p,), x) for p, x in dom})

    @cached_property
    def m_r(self) -> LinearMap:
        dom = self._pairs(self.vbar_basis, self.algebra.basis)
        return LinearMap(dom, self.vbar_basis, {(x, q): self.tensor.mul_words(x, (q,)) for x, q in dom})

    @cached_property
    def m_vbar(self) -> LinearMap:
        dom = self._pairs(self.vbar_basis, self.vbar_basis)
        return LinearMap(dom, self.tensor_square_basis, {(x, y): self.tensor.mul_words(x, y) for x, y in dom})

    @cached_property
    def m_L(self) -> LinearMap:
        dom = self._pairs(self.algebra.basis, self.tensor_square_basis)
        return LinearMap(dom, self.tensor_square_basis, {(p, w): self.tensor.mul_words((p,), w) for p, w in dom})

    @cached_property
    def m_R(self) -> LinearMap:
        dom = self._pairs(self.tensor_square_basis, self.algebra.basis)
        return LinearMap(dom, self.tensor_square_basis, {(w, q): self.tensor.mul_words(w, (q,)) for w, q in dom})

    @cached_property
    def d0_map(self) -> LinearMap:
        A = self.algebra.basis
        return LinearMap(A, self.vbar_basis, {p: self.tensor.d_path(p) for p in A})

    @cached_property
    def d1_map(self) -> LinearMap:
        return LinearMap(self.vbar_basis, self.tensor_square_basis, {x: self.tensor.d_word(x) for x in self.vbar_basis})

    @cached_property
    def v_tensor_basis(self) -> tuple:
        """Normal words of V ⊗_A V."""
        out = []
        gens = [(OMEGA, i, i) for i in range(1, self.n + 1)] + [(v.name, v.target, v.source) for v in self.quiver.dashed]
        A = self.algebra
        for p0 in A.basis:
            for g1, t1, s1 in gens:
                if t1 != p0.source:
                    continue
                mids = [trivial(s1)] if g1 == OMEGA else A.ending_at(s1)
                for p1 in mids:
                    for g2, t2, s2 in gens:
                        if t2 != p1.source:
                            continue
                        ends = [trivial(s2)] if g2 == OMEGA else A.ending_at(s2)
                        for p2 in ends:
                            out.append((p0, g1, p1, g2, p2))
        return tuple(sorted(out, key=word_key))

    @cached_property
    def eps_map(self) -> LinearMap:
        return LinearMap(self.v_basis, self.algebra.basis, {x: self.eps({x: Fraction(1)}) for x in self.v_basis})

    @cached_property
    def mu_map(self) -> LinearMap:
        return LinearMap(self.v_basis, self.v_tensor_basis, {x: self.mu_word(x) for x in self.v_basis})


def _src(x) -> int:
    return x.source if isinstance(x, Path) else word_source(x)


def _tgt(x) -> int:
    return x.target if isinstance(x, Path) else word_target(x)


def structure_maps(dbq: DiffBiquiver) -> Bocs:
    return Bocs(dbq)


# ---------------------------------------------------------------------------
# opposites


def _op_path(p: Path, n: int) -> Path:
    return Path(n + 1 - p.target, n + 1 - p.source, tuple(reversed(p.arrows)))


def op_word(word: tuple, n: int) -> tuple:
    return tuple(_op_path(s, n) if isinstance(s, Path) else s for s in reversed(word))


def op_sign(degree: int) -> int:
    # reversing k factors of degree one is a permutation with k(k-1)/2 inversions
    return -1 if (degree * (degree - 1) // 2) % 2 else 1


def op_element(elem: Mapping, n: int) -> dict:
    return {op_word(w, n): c * op_sign(len(w) // 2) for w, c in elem.items()}


def opposite(obj):
    """Opposite biquiver (or bocs): reverse arrows and relabel i ↦ n+1−i."""
    if isinstance(obj, Bocs):
        return Bocs(opposite(obj.biquiver), _checked=True)
    dbq: DiffBiquiver = obj
    n = dbq.n
    quiver = Quiver(n, [Arrow(a.name, n + 1 - a.target, n + 1 - a.source, a.degree) for a in dbq.quiver.arrows])
    relations = [{_op_path(p, n): c for p, c in r.items()} for r in dbq.relations]
    d0 = {k: op_element(v, n) for k, v in dbq.d0.items()}
    d1 = {k: op_element(v, n) for k, v in dbq.d1.items()}
    return DiffBiquiver(quiver, relations, d0, d1)


# ---------------------------------------------------------------------------
# coalgebra axioms


def check_coalgebra(b: Bocs) -> ValidationReport:
    """Coassociativity, counit, grouplike and A-bimodule compatibility of μ."""
    violations = []
    one = Fraction(1)

    def label(word):
        return word_str(word).replace(OMEGA, "omega") if len(word) > 1 else str(word[0])

    def left_then(elem, fn):
        # apply fn to the left tensor factor of degree two words
        out: dict = {}
        for (p0, g1, p1, g2, p2), c in elem.items():
            add_to(out, b.vmul(fn((p0, g1, p1)), {(trivial(p1.source), g2, p2): one}), c)
        return out

    def right_then(elem, fn):
        out: dict = {}
        for (p0, g1, p1, g2, p2), c in elem.items():
            add_to(out, b.vmul({(p0, g1, p1): one}, fn((trivial(p1.source), g2, p2))), c)
        return out

    def eps_elem(word):
        return {(p,): c for p, c in b.eps({word: one}).items()}

    for x in b.v_basis:
        mx = b.mu_word(x)
        lhs = left_then(mx, b.mu_word)
        rhs = right_then(mx, b.mu_word)
        diff = add_to(dict(lhs), rhs, Fraction(-1))
        if diff:
            violations.append(Violation(label(x), "coassociativity", diff, element_str(diff)))
        for side, fn in (("left counit", left_then), ("right counit", right_then)):
            back = fn(mx, eps_elem)
            diff = add_to(dict(back), {x: one}, Fraction(-1))
            if diff:
                violations.append(Violation(label(x), side, diff, element_str(diff)))
        for a in b.quiver.solid:
            if a.target != x[-1].source:
                continue
            q = Path(a.source, a.target, (a.name,))
            xa = b._rmul_path(x, q)
            lhs = b.mu(xa)
            rhs: dict = {}
            for w, c in mx.items():
                add_to(rhs, b._rmul_path(w, q), c)
            diff = add_to(dict(lhs), rhs, Fraction(-1))
            if diff:
                violations.append(Violation(f"{label(x)}*{a.name}", "right A-linearity", diff, element_str(diff)))
    for i in range(1, b.n + 1):
        w = b.omega(i)
        if b.mu(w) != {(trivial(i), OMEGA, trivial(i), OMEGA, trivial(i)): one} or b.eps(w) != {trivial(i): one}:
            violations.append(Violation(f"omega_{i}", "grouplike"))
    for v in b.quiver.dashed:
        et, es = trivial(v.target), trivial(v.source)
        reduced = add_to(b.mu_word((et, v.name, es)), {(et, OMEGA, et, v.name, es): one, (et, v.name, es, OMEGA, es): one}, Fraction(-1))
        declared = b.tensor.d1.get(v.name, {})
        diff = add_to(dict(reduced), declared, Fraction(-1))
        if diff:
            violations.append(Violation(v.name, "consistency with d1", diff, element_str(diff)))
    return ValidationReport(tuple(violations))
