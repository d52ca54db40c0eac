"""Reports: human readable text or JSON Lines.

Machine format: one JSON object per line with sorted keys.  Rows carry
``"record": "row"``; the last line carries ``"record": "summary"`` with
the operation, family name, SHA-256 of the inputs, seed, bounds, exit
code and the summary fields.  No timings are included, so equal inputs
and seed give byte-identical reports.
"""

import hashlib
import json

from ..poly import RationalFunction, is_regular_on, simplify_fraction

FORMAT_VERSION = "cycletrace-report/1"


def show(r):
    """(text, regular) for a trace value: a polynomial representative when
    regular, otherwise polynomial part + fractional part when that is
    simpler than the raw fraction."""
    if not isinstance(r, RationalFunction):
        return str(r), True
    if r.den.is_constant():
        return str(r), True
    reg = is_regular_on(r)
    if reg.regular:
        return str(reg.witness), True
    dec = simplify_fraction(r)
    if dec.denominator.degree() <= r.den.degree() and not dec.fraction.is_zero():
        if dec.polynomial.is_zero():
            return str(dec.fraction), False
        frac = str(dec.fraction)
        if frac.startswith("-"):
            return f"{dec.polynomial} - {frac[1:]}", False
        return f"{dec.polynomial} + {frac}", False
    return str(r), False


class Report:
    def __init__(self, operation, seed=0):
        self.operation = operation
        self.seed = seed
        self.family = None
        self.digest = None
        self.bounds = {}
        self.rows = []
        self.fields = {}
        self.errors = []
        self.exit_code = 0

    def set_input(self, desc, expr=None):
        self.family = desc.name
        h = hashlib.sha256(desc.text.encode("utf-8"))
        if expr is not None:
            h.update(b"\0" + expr.encode("utf-8"))
        self.digest = h.hexdigest()

    def row(self, **fields):
        self.rows.append({k: v for k, v in fields.items() if v is not None})

    def summary(self, **fields):
        self.fields.update(fields)

    def error(self, message):
        self.errors.append(message)

    # output

    def records(self):
        base = {"op": self.operation}
        if self.family is not None:
            base["family"] = self.family
        out = []
        for r in self.rows:
            rec = dict(base)
            rec.update(r)
            rec["record"] = "row"
            out.append(rec)
        s = dict(base)
        s.update({"record": "summary", "format": FORMAT_VERSION, "seed": self.seed,
                  "input_sha256": self.digest, "bounds": self.bounds,
                  "exit_code": self.exit_code, "rows": len(self.rows)})
        s.update(self.fields)
        if self.errors:
            s["errors"] = list(self.errors)
        out.append(s)
        return out

    def emit(self, fh, fmt="text"):
        if fmt == "machine":
            for rec in self.records():
                fh.write(json.dumps(rec, sort_keys=True, default=str) + "\n")
            return
        title = self.operation + (f" {self.family}" if self.family else "")
        fh.write(f"== {title}\n")
        for r in self.rows:
            fh.write("  " + "  ".join(f"{k}: {_text(v)}" for k, v in r.items()) + "\n")
        if self.bounds:
            fh.write("  bounds: " + ", ".join(f"{k}={v}" for k, v in self.bounds.items()) + "\n")
        for k, v in self.fields.items():
            if isinstance(v, dict) and k == "witness":
                fh.write("  witness:\n")
                for kk, vv in v.items():
                    if vv is not None:
                        fh.write(f"    {kk}: {_text(vv)}\n")
            else:
                fh.write(f"  {k}: {_text(v)}\n")
        for e in self.errors:
            fh.write(f"error: {e}\n")
        fh.write(f"  exit: {self.exit_code}\n")


def _text(v):
    if isinstance(v, dict):
        return ", ".join(f"{k}={_text(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_text(x) for x in v) + ")"
    if v is None:
        return "none"
    return str(v)
