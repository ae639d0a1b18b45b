"""Canonical JSON serialisation of instances, morphisms and reports.

Rationals travel as strings ("p/q" or an integer string) so no float is
ever produced or accepted.  Serialisation is canonical: basis entries,
table rows and report fields appear in a fixed order, and emitting a
parsed file reproduces it byte for byte.
"""

import json
import re
from fractions import Fraction

from .algebra import DGBVInstance
from .graded import GradedSpace, LinearOperator
from .morphism import DGBVMorphism

INSTANCE_FORMAT = "dgbv-instance/1"
MORPHISM_FORMAT = "dgbv-morphism/1"

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class FormatError(ValueError):
    """Malformed input file; the message carries location context."""


def parse_rational(s, where=""):
    s = str(s).strip()
    if not _RATIONAL_RE.match(s):
        raise FormatError(f"bad rational {s!r}{' in ' + where if where else ''}")
    f = Fraction(s)
    if "/" in s and int(s.split("/")[1]) == 0:
        raise FormatError(f"zero denominator in {s!r}")
    return f


def format_rational(f):
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _expect(cond, msg):
    if not cond:
        raise FormatError(msg)


def instance_to_dict(A):
    space = A.space
    mult = []
    for (i, j) in sorted(A.mult,
                         key=lambda ij: (space.label_of(ij[0]),
                                         space.label_of(ij[1]))):
        for k in sorted(A.mult[(i, j)], key=space.label_of):
            mult.append([space.label_of(i), space.label_of(j),
                         space.label_of(k),
                         format_rational(A.mult[(i, j)][k])])
    data = {
        "format": INSTANCE_FORMAT,
        "field": "Q",
        "name": A.name,
        "basis": [{"label": lbl, "degree": deg} for lbl, deg in space.basis],
        "multiplication": mult,
        "delta": [[f, t, format_rational(c)] for f, t, c in A.delta.entries()],
        "bv": [[f, t, format_rational(c)] for f, t, c in A.bv.entries()],
    }
    if A.integral is not None:
        data["integral"] = [[space.label_of(i), format_rational(A.integral[i])]
                            for i in range(space.dim) if A.integral[i]]
    if A.unit is not None:
        data["unit"] = A.unit
    return data


def instance_to_json(A):
    return json.dumps(instance_to_dict(A), indent=1) + "\n"


def instance_from_dict(data):
    _expect(isinstance(data, dict), "instance file must be a JSON object")
    _expect(data.get("format") == INSTANCE_FORMAT,
            f"unknown format {data.get('format')!r}; expected {INSTANCE_FORMAT}")
    _expect(data.get("field", "Q") == "Q", "only the rational field is supported")
    raw_basis = data.get("basis")
    _expect(isinstance(raw_basis, list) and raw_basis, "missing basis list")
    basis = []
    for idx, entry in enumerate(raw_basis):
        _expect(isinstance(entry, dict) and "label" in entry and "degree" in entry,
                f"basis entry {idx} must have label and degree")
        _expect(isinstance(entry["degree"], int),
                f"degree of basis entry {idx} must be an integer")
        basis.append((str(entry["label"]), entry["degree"]))
    space = GradedSpace(basis)

    def resolve(lbl, where):
        _expect(str(lbl) in space.index, f"unknown label {lbl!r} in {where}")
        return space.index[str(lbl)]

    mult = {}
    for row in data.get("multiplication", []):
        _expect(isinstance(row, list) and len(row) == 4,
                f"multiplication rows are [a, b, c, coeff]: got {row!r}")
        a, b, c, coeff = row
        i, j, k = (resolve(a, "multiplication"), resolve(b, "multiplication"),
                   resolve(c, "multiplication"))
        entry = mult.setdefault((i, j), {})
        entry[k] = entry.get(k, 0) + parse_rational(coeff, f"product {a}*{b}")

    def operator(key, degree):
        entries = {}
        for row in data.get(key, []):
            _expect(isinstance(row, list) and len(row) == 3,
                    f"{key} rows are [from, to, coeff]: got {row!r}")
            f, t, c = row
            resolve(f, key)
            resolve(t, key)
            entries[(str(f), str(t))] = entries.get((str(f), str(t)), 0) \
                + parse_rational(c, f"{key} {f}->{t}")
        try:
            return LinearOperator.from_entries(space, space, degree, entries)
        except ValueError as e:
            raise FormatError(f"{key}: {e}") from None

    delta = operator("delta", 1)
    bv = operator("bv", -1)

    integral = None
    if "integral" in data:
        integral = [Fraction(0)] * space.dim
        for row in data["integral"]:
            _expect(isinstance(row, list) and len(row) == 2,
                    f"integral rows are [label, value]: got {row!r}")
            lbl, val = row
            integral[resolve(lbl, "integral")] = parse_rational(val, "integral")
    unit = data.get("unit")
    if unit is not None:
        resolve(unit, "unit")
        unit = str(unit)
    name = str(data.get("name", "instance"))
    return DGBVInstance(space, mult, delta, bv, integral=integral, unit=unit,
                        name=name)


def load_instance(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: invalid JSON at line {e.lineno}, "
                              f"column {e.colno}: {e.msg}") from None
    try:
        return instance_from_dict(data)
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from None


def morphism_to_dict(m):
    return {
        "format": MORPHISM_FORMAT,
        "name": m.name,
        "source": m.source.name,
        "target": m.target.name,
        "blocks": [[f, t, format_rational(c)] for f, t, c in m.operator.entries()],
    }


def morphism_to_json(m):
    return json.dumps(morphism_to_dict(m), indent=1) + "\n"


def morphism_from_dict(data, source, target):
    _expect(isinstance(data, dict), "morphism file must be a JSON object")
    _expect(data.get("format") == MORPHISM_FORMAT,
            f"unknown format {data.get('format')!r}; expected {MORPHISM_FORMAT}")
    entries = {}
    for row in data.get("blocks", []):
        _expect(isinstance(row, list) and len(row) == 3,
                f"morphism rows are [from, to, coeff]: got {row!r}")
        f, t, c = row
        _expect(str(f) in source.space.index,
                f"unknown source label {f!r} in morphism")
        _expect(str(t) in target.space.index,
                f"unknown target label {t!r} in morphism")
        entries[(str(f), str(t))] = entries.get((str(f), str(t)), 0) \
            + parse_rational(c, f"morphism {f}->{t}")
    try:
        return DGBVMorphism.from_entries(source, target, entries,
                                         name=str(data.get("name", "f")))
    except ValueError as e:
        raise FormatError(f"morphism: {e}") from None


def load_morphism(path, source, target):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: invalid JSON at line {e.lineno}, "
                              f"column {e.colno}: {e.msg}") from None
    try:
        return morphism_from_dict(data, source, target)
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from None


def report_to_json(report, extra=None):
    data = report.to_dict()
    if extra:
        data.update(extra)
    return json.dumps(data, indent=1, default=str) + "\n"


def polynomial_to_dict(poly):
    """Monomial-string to rational-string map, in canonical monomial order."""
    return {poly.ring.mono_str(m): format_rational(c)
            for m, c in poly.terms_sorted()}


def series_to_dict(F):
    """FormalElement as {monomial: {basis label: rational}}."""
    out = {}
    for m, coeff in F.terms_sorted():
        out[F.ring.mono_str(m)] = {
            coeff.space.label_of(i): format_rational(c)
            for i, c in sorted(coeff.coeffs.items())}
    return out
