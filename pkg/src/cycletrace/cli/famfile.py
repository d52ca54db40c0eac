"""Family description files.

A family file is UTF-8 text, one statement per line, ``#`` starting a
comment.  Indentation is free.  Statements::

    family NAME
    base VAR ...            chart VAR ...          fiber VAR ...
    param VAR ...           parametrize VAR = POLY
    base-ideal POLY, ...
    component NAME [weight N]
    weight N
    ideal POLY, ...         ci POLY, ...
    branch VAR = EXPR, VAR = EXPR, ...
    stratum NAME VAR=VALUE ...
    junction NAME VAR=VALUE ... from STRATUM STRATUM ...
    symmetric COMPONENT COMPONENT ...

``base-ideal``, ``weight``, ``ideal``, ``ci`` and ``branch`` apply to the
current component (the most recent ``component`` line); before any
``component`` line, ``base-ideal`` belongs to the base and the others
open an implicit component named ``main``.
"""

import re
from dataclasses import dataclass, field

from ..covering import Component, Covering, Scale
from ..errors import FamilyError, ParseError
from ..flatness import Family, Junction, SamplePoint
from ..poly import Poly, parse_ratfunc
from ..poly.polynomial import to_q

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")
_DECL = ("base", "chart", "fiber", "param")


@dataclass
class Statement:
    keyword: str
    rest: str
    line: int
    column: int          # column where ``rest`` starts


@dataclass
class FamilyDescription:
    name: str
    family: Family
    text: str = ""
    source: str = None
    statements: list = field(default_factory=list)

    @property
    def covering(self):
        return self.family.covering


def _statements(text, source):
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        start = len(line) - len(line.lstrip())
        body = line[start:]
        parts = body.split(None, 1)
        kw = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        col = line.index(rest, start + len(kw)) + 1 if rest else start + len(kw) + 1
        out.append(Statement(kw, rest, n, col))
    return out


class _Builder:
    def __init__(self, text, source):
        self.text = text
        self.source = source
        self.vars = {k: () for k in _DECL}
        self.name = None
        self.base_ideal = []
        self.parametrization = {}
        self.components = []          # dicts
        self.strata = []
        self.junctions = []
        self.ties = []

    def fail(self, msg, st=None, offset=0):
        line = st.line if st else None
        col = st.column + offset if st else None
        raise FamilyError(msg, line, col, self.source)

    # expressions

    def _split(self, st, sep=","):
        """Pieces of st.rest split at ``sep`` with their column offsets."""
        out = []
        pos = 0
        for piece in st.rest.split(sep):
            lead = len(piece) - len(piece.lstrip())
            if piece.strip():
                out.append((piece.strip(), pos + lead))
            pos += len(piece) + len(sep)
        return out

    def _expr(self, text, st, offset, gens, poly=True):
        try:
            r = parse_ratfunc(text, gens)
        except ParseError as exc:
            col = (exc.column - 1) if exc.column else 0
            self.fail(exc.message, st, offset + col)
        if poly:
            if not r.den.is_constant():
                self.fail(f"not a polynomial: {text!r}", st, offset)
            return r.as_poly().to_gens(gens)
        return r

    def _point(self, st, items):
        pt = {}
        allvars = self.vars["base"] + self.vars["chart"] + self.vars["fiber"]
        for text, off in items:
            if "=" not in text:
                self.fail(f"expected VAR=VALUE, got {text!r}", st, off)
            var, val = (s.strip() for s in text.split("=", 1))
            if var not in allvars:
                self.fail(f"unknown variable {var!r}", st, off)
            try:
                pt[var] = to_q(val)
            except (ValueError, ZeroDivisionError):
                self.fail(f"not a rational number: {val!r}", st, off + text.index("=") + 1)
        return pt

    def _words(self, st):
        out = []
        for m in re.finditer(r"\S+", st.rest):
            out.append((m.group(), m.start()))
        return out

    # statements

    def declare(self, st):
        if self.vars[st.keyword]:
            self.fail(f"duplicate {st.keyword} declaration", st, -len(st.keyword) - 1)
        names = []
        seen = set(v for k in _DECL for v in self.vars[k])
        for w, off in self._words(st):
            if not _NAME.match(w):
                self.fail(f"invalid variable name {w!r}", st, off)
            if w in seen or w in names:
                self.fail(f"duplicate variable {w!r}", st, off)
            names.append(w)
        if not names:
            self.fail(f"{st.keyword} needs at least one variable", st)
        self.vars[st.keyword] = tuple(names)

    def current(self, st, create=True):
        if not self.components:
            if not create:
                return None
            self.components.append(self._new_component("main", st))
        return self.components[-1]

    def _new_component(self, name, st):
        return {"name": name, "weight": 1, "weight_st": st, "base_ideal": [], "ideal": [],
                "ci": [], "branches": [], "line": st}

    def build(self, statements):
        header = [s for s in statements if s.keyword in _DECL]
        for st in header:
            self.declare(st)
        if not self.vars["base"] and not self.vars["fiber"]:
            self.fail("no base or fiber variables declared")
        if not self.vars["fiber"]:
            self.fail("no fiber variables declared")
        base = self.vars["base"]
        chart = self.vars["chart"]
        fiber = self.vars["fiber"]
        params = self.vars["param"]
        ring = base + chart + fiber
        branch_ring = ring + params
        for st in statements:
            kw = st.keyword
            if kw in _DECL:
                continue
            if kw == "family":
                if self.name is not None:
                    self.fail("duplicate family name", st)
                if not st.rest.strip():
                    self.fail("family needs a name", st)
                self.name = st.rest.strip()
            elif kw == "base-ideal":
                target = self.components[-1]["base_ideal"] if self.components else self.base_ideal
                for text, off in self._split(st):
                    target.append(self._expr(text, st, off, base))
            elif kw == "parametrize":
                if "=" not in st.rest:
                    self.fail("expected VAR = POLY", st)
                var, expr = st.rest.split("=", 1)
                var = var.strip()
                if var not in base:
                    self.fail(f"{var!r} is not a base variable", st)
                if var in self.parametrization:
                    self.fail(f"duplicate parametrization of {var!r}", st)
                if not params:
                    self.fail("parametrize needs param variables", st)
                off = st.rest.index("=") + 1
                off += len(expr) - len(expr.lstrip())
                self.parametrization[var] = self._expr(expr.strip(), st, off, params)
            elif kw == "component":
                words = self._words(st)
                if not words:
                    self.fail("component needs a name", st)
                name = words[0][0]
                if any(c["name"] == name for c in self.components):
                    self.fail(f"duplicate component {name!r}", st, words[0][1])
                comp = self._new_component(name, st)
                rest = words[1:]
                if rest:
                    if rest[0][0] != "weight" or len(rest) != 2:
                        self.fail("expected 'component NAME [weight N]'", st, rest[0][1])
                    comp["weight"] = self._weight(rest[1][0], st, rest[1][1])
                self.components.append(comp)
            elif kw == "weight":
                comp = self.current(st)
                comp["weight"] = self._weight(st.rest.strip(), st, 0)
            elif kw in ("ideal", "ci"):
                comp = self.current(st)
                for text, off in self._split(st):
                    comp[kw].append(self._expr(text, st, off, ring))
            elif kw == "branch":
                comp = self.current(st)
                br = {}
                for text, off in self._split(st):
                    if "=" not in text:
                        self.fail(f"expected VAR = EXPR, got {text!r}", st, off)
                    var, expr = text.split("=", 1)
                    var = var.strip()
                    if var not in fiber:
                        self.fail(f"{var!r} is not a fiber variable", st, off)
                    if var in br:
                        self.fail(f"{var!r} given twice in one branch", st, off)
                    eoff = off + text.index("=") + 1 + (len(expr) - len(expr.lstrip()))
                    br[var] = self._expr(expr.strip(), st, eoff, branch_ring, poly=False)
                if set(br) != set(fiber):
                    self.fail("a branch must give every fiber variable", st)
                comp["branches"].append(br)
            elif kw == "stratum":
                words = self._words(st)
                if not words:
                    self.fail("stratum needs a name", st)
                name = words[0][0]
                if any(s.name == name for s in self.strata):
                    self.fail(f"duplicate stratum {name!r}", st, words[0][1])
                pt = self._point(st, words[1:])
                if not pt:
                    self.fail(f"stratum {name!r} has no sample point", st)
                self.strata.append(SamplePoint(name, pt))
            elif kw == "junction":
                words = self._words(st)
                if not words:
                    self.fail("junction needs a name", st)
                names = [w for w, _ in words]
                if "from" not in names:
                    self.fail("junction needs 'from STRATUM STRATUM ...'", st)
                k = names.index("from")
                pt = self._point(st, words[1:k])
                frm = words[k + 1:]
                if len(frm) < 2:
                    self.fail("a junction joins at least two strata", st)
                self.junctions.append((words[0][0], pt, frm, st))
            elif kw == "symmetric":
                words = self._words(st)
                if len(words) < 2:
                    self.fail("symmetric needs at least two components", st)
                self.ties.append((tuple(w for w, _ in words), st, words))
            else:
                self.fail(f"unknown statement {kw!r}", st, -len(kw) - 1)
        return self.finish()

    def _weight(self, text, st, off):
        try:
            w = int(text)
        except ValueError:
            self.fail(f"weight must be a positive integer, got {text!r}", st, off)
        if w <= 0:
            self.fail(f"weight must be a positive integer, got {w}", st, off)
        return w

    def finish(self):
        if not self.components:
            self.fail("no components (give 'ideal' or 'branch' lines)")
        base = self.vars["base"]
        params = self.vars["param"]
        if params and set(self.parametrization) != set(base):
            self.fail("with param variables every base variable needs a parametrize line")
        scale = Scale(base, list(self.base_ideal), self.vars["chart"], self.vars["fiber"],
                      params, dict(self.parametrization))
        comps = []
        for c in self.components:
            if not c["ideal"] and not c["branches"]:
                self.fail(f"component {c['name']!r} has neither an ideal nor branches", c["line"])
            if c["ci"] and len(c["ci"]) != len(self.vars["fiber"]):
                self.fail(f"component {c['name']!r}: a ci presentation needs one equation per "
                          "fiber variable", c["line"])
            comps.append(Component(c["name"], c["weight"], c["base_ideal"], c["ideal"],
                                   c["branches"], c["ci"]))
        cov = Covering(scale, comps, self.name or "family")
        names = {c.name for c in comps}
        strata = {s.name for s in self.strata}
        junctions = []
        for name, pt, frm, st in self.junctions:
            for w, off in frm:
                if w not in strata:
                    self.fail(f"unknown stratum {w!r}", st, off)
            junctions.append(Junction(name, pt, tuple(w for w, _ in frm)))
        ties = []
        for tie, st, words in self.ties:
            for w, off in words:
                if w not in names:
                    self.fail(f"unknown component {w!r}", st, off)
            ties.append(tie)
        return Family(cov, list(self.strata), junctions, ties)


def parse_family(text, source=None):
    """Parse a family description; raises FamilyError with line and column."""
    statements = _statements(text, source)
    if not statements:
        raise FamilyError("empty family description", 1, 1, source)
    b = _Builder(text, source)
    fam = b.build(statements)
    return FamilyDescription(fam.name, fam, text, source, statements)


def load_family(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_family(text, str(path))
