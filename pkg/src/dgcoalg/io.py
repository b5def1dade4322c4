"""JSON fixture documents: parsing, resolution of named references, serialization.

Layout of a document (every section optional except ``field``)::

    {
      "field": "Q" | {"Fp": 5},
      "coalgebras":  {name: {"basis": [{"label", "degree"}],
                             "comultiplication": [{"on", "left", "right", "coeff"}],
                             "counit": {label: coeff},
                             "differential": [{"on", "to", "coeff"}]}},
      "comodules":   {name: {"over", "side", "basis",
                             "coaction": [{"on", "c", "m", "coeff"}], "differential"}},
      "bicomodules": {name: {"left", "right", "basis",
                             "left_coaction": [{"on", "c", "m", "coeff"}],
                             "right_coaction": [{"on", "m", "c", "coeff"}], "differential"}},
      "morphisms":   {name: {"source", "target", "blocks": {degree: dense matrix}}},
      "contexts":    {name: {"C", "D", "P", "Q", "phi": dense, "psi": dense}},
      "certificates": {name: {"C", "D", "T", "witness_C": [dense], "witness_D": [dense],
                              "add_sequence": {...}, "injective_sequence": {...}, "n_max"}}
    }

Dense matrices are lists of rows of coefficient strings, in basis order.
Direct sums concatenate bases; tensor products use pairs in lexicographic
order with the left factor slowest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Union

from .coalgebra import Bicomodule, CoalgebraMorphism, DGCoalgebra, DGComodule, StructureError
from .invariance import (AddSequence, CotiltingCertificate, InjectiveSequence, MoritaContext, SplitWitness)
from .linalg import QQ, Field, Matrix

FORMAT_VERSION = 1


class FixtureError(ValueError):
    """Malformed document, unresolved reference or bad coefficient."""

    def __init__(self, message: str, path: str = "", line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        loc = []
        if line is not None:
            loc.append(f"line {line}, column {column}")
        if path:
            loc.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(loc)})" if loc else message)


@dataclass
class FixtureDocument:
    field: Field
    coalgebras: Dict[str, DGCoalgebra] = dc_field(default_factory=dict)
    comodules: Dict[str, DGComodule] = dc_field(default_factory=dict)
    bicomodules: Dict[str, Bicomodule] = dc_field(default_factory=dict)
    morphisms: Dict[str, CoalgebraMorphism] = dc_field(default_factory=dict)
    contexts: Dict[str, MoritaContext] = dc_field(default_factory=dict)
    certificates: Dict[str, CotiltingCertificate] = dc_field(default_factory=dict)
    description: Optional[str] = None


# ---------------------------------------------------------------------------
# field and coefficients


def parse_field(spec) -> Field:
    p = None
    if spec == "Q":
        return QQ
    if isinstance(spec, str) and spec.startswith("F") and spec[1:].isdigit():
        p = int(spec[1:])
    elif isinstance(spec, dict) and set(spec) == {"Fp"} and isinstance(spec["Fp"], int):
        p = spec["Fp"]
    if p is None:
        raise FixtureError(f"unknown field {spec!r}; expected \"Q\" or {{\"Fp\": p}}", "field")
    try:
        return Field.prime(p)
    except ValueError as e:
        raise FixtureError(str(e), "field") from None


def field_spec(f: Field):
    return "Q" if f.p is None else {"Fp": f.p}


def parse_coeff(raw, fld: Field, path: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise FixtureError(f"coefficient must be a string or integer, got {raw!r}", path)
    try:
        q = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise FixtureError(f"bad coefficient {raw!r}", path) from None
    try:
        return fld(q)
    except (ValueError, ZeroDivisionError):
        raise FixtureError(f"coefficient {raw!r} is not defined in {fld.name}", path) from None


def coeff_str(v, fld: Field) -> str:
    return fld.to_str(v)


# ---------------------------------------------------------------------------
# parsing


class _Reader:
    def __init__(self, data: dict, fld: Field):
        self.data = data
        self.fld = fld
        self.doc = FixtureDocument(fld)

    @staticmethod
    def _get(obj, key, path, kind=None):
        if not isinstance(obj, dict) or key not in obj:
            raise FixtureError(f"missing key {key!r}", path)
        v = obj[key]
        if kind is not None and not isinstance(v, kind):
            raise FixtureError(f"{key!r} has the wrong type", f"{path}.{key}")
        return v

    def _basis(self, obj, path):
        basis = self._get(obj, "basis", path, list)
        labels, degrees = [], []
        for i, b in enumerate(basis):
            p = f"{path}.basis[{i}]"
            lab = self._get(b, "label", p, str)
            deg = self._get(b, "degree", p)
            if isinstance(deg, bool) or not isinstance(deg, int):
                raise FixtureError("degree must be an integer", f"{p}.degree")
            if lab in labels:
                raise FixtureError(f"duplicate basis label {lab!r}", p)
            labels.append(lab)
            degrees.append(deg)
        return labels, {l: i for i, l in enumerate(labels)}, degrees

    def _label(self, index, lab, path, what):
        if lab not in index:
            raise FixtureError(f"unknown {what} basis label {lab!r}", path)
        return index[lab]

    def _ref(self, table: dict, name, path, what):
        if not isinstance(name, str) or name not in table:
            raise FixtureError(f"unresolved {what} reference {name!r}", path)
        return table[name]

    def _terms(self, obj, key, path, fields, indices, n):
        """Group terms by their ``on`` element; ``fields`` maps key -> index table."""
        out = [[] for _ in range(n)]
        for i, t in enumerate(obj.get(key, [])):
            p = f"{path}.{key}[{i}]"
            on = self._label(indices["on"], self._get(t, "on", p), f"{p}.on", "source")
            vals = tuple(self._label(indices[f], self._get(t, f, p), f"{p}.{f}", f) for f in fields)
            out[on].append(vals + (parse_coeff(self._get(t, "coeff", p), self.fld, f"{p}.coeff"),))
        return out

    def _diff(self, obj, path, index, n):
        return self._terms(obj, "differential", path, ("to",), {"on": index, "to": index}, n)

    def _dense(self, rows, path, shape=None) -> Matrix:
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise FixtureError("matrix must be a list of rows", path)
        ncols = len(rows[0]) if rows else (shape[1] if shape else 0)
        if any(len(r) != ncols for r in rows):
            raise FixtureError("ragged matrix", path)
        if shape is not None and (len(rows), ncols) != shape:
            raise FixtureError(f"matrix has shape {(len(rows), ncols)}, expected {shape}", path)
        data = [[parse_coeff(x, self.fld, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
        return Matrix.from_dense(self.fld, data, ncols)

    def _structure(self, build, path):
        try:
            return build()
        except StructureError as e:
            raise FixtureError(str(e), path) from None

    def read(self) -> FixtureDocument:
        d = self.data
        known = {"field", "format", "description", "coalgebras", "comodules", "bicomodules", "morphisms",
                 "contexts", "certificates"}
        for k in d:
            if k not in known:
                raise FixtureError(f"unknown section {k!r}", k)
        for name, obj in sorted(d.get("coalgebras", {}).items()):
            self.doc.coalgebras[name] = self._coalgebra(name, obj, f"coalgebras.{name}")
        for name, obj in sorted(d.get("comodules", {}).items()):
            self.doc.comodules[name] = self._comodule(name, obj, f"comodules.{name}")
        for name, obj in sorted(d.get("bicomodules", {}).items()):
            self.doc.bicomodules[name] = self._bicomodule(name, obj, f"bicomodules.{name}")
        for name, obj in sorted(d.get("morphisms", {}).items()):
            self.doc.morphisms[name] = self._morphism(name, obj, f"morphisms.{name}")
        for name, obj in sorted(d.get("contexts", {}).items()):
            self.doc.contexts[name] = self._context(name, obj, f"contexts.{name}")
        for name, obj in sorted(d.get("certificates", {}).items()):
            self.doc.certificates[name] = self._certificate(name, obj, f"certificates.{name}")
        desc = d.get("description")
        if desc is not None and not isinstance(desc, str):
            raise FixtureError("description must be a string", "description")
        self.doc.description = desc
        return self.doc

    def _coalgebra(self, name, obj, path) -> DGCoalgebra:
        labels, index, degrees = self._basis(obj, path)
        n = len(labels)
        comult = self._terms(obj, "comultiplication", path, ("left", "right"),
                             {"on": index, "left": index, "right": index}, n)
        cu = self._get(obj, "counit", path, dict)
        counit = [self.fld(0)] * n
        for lab, v in cu.items():
            counit[self._label(index, lab, f"{path}.counit", "counit")] = parse_coeff(v, self.fld, f"{path}.counit.{lab}")
        diff = [[(t, v) for t, v in ts] for ts in self._diff(obj, path, index, n)]
        return self._structure(lambda: DGCoalgebra(self.fld, labels, degrees, comult, counit, diff, name=name), path)

    def _comodule(self, name, obj, path) -> DGComodule:
        c = self._ref(self.doc.coalgebras, self._get(obj, "over", path), f"{path}.over", "coalgebra")
        side = self._get(obj, "side", path, str)
        if side not in ("left", "right"):
            raise FixtureError("side must be \"left\" or \"right\"", f"{path}.side")
        labels, index, degrees = self._basis(obj, path)
        n = len(labels)
        cidx = {l: i for i, l in enumerate(c.labels)}
        coaction = self._terms(obj, "coaction", path, ("c", "m"), {"on": index, "c": cidx, "m": index}, n)
        diff = self._diff(obj, path, index, n)
        return self._structure(lambda: DGComodule(c, side, labels, degrees, coaction, diff, name=name), path)

    def _bicomodule(self, name, obj, path) -> Bicomodule:
        left = self._ref(self.doc.coalgebras, self._get(obj, "left", path), f"{path}.left", "coalgebra")
        right = self._ref(self.doc.coalgebras, self._get(obj, "right", path), f"{path}.right", "coalgebra")
        labels, index, degrees = self._basis(obj, path)
        n = len(labels)
        lidx = {l: i for i, l in enumerate(left.labels)}
        ridx = {l: i for i, l in enumerate(right.labels)}
        lc = self._terms(obj, "left_coaction", path, ("c", "m"), {"on": index, "c": lidx, "m": index}, n)
        rc = self._terms(obj, "right_coaction", path, ("c", "m"), {"on": index, "c": ridx, "m": index}, n)
        diff = self._diff(obj, path, index, n)
        return self._structure(lambda: Bicomodule(left, right, labels, degrees, lc, rc, diff, name=name), path)

    def _morphism(self, name, obj, path) -> CoalgebraMorphism:
        src = self._ref(self.doc.coalgebras, self._get(obj, "source", path), f"{path}.source", "coalgebra")
        tgt = self._ref(self.doc.coalgebras, self._get(obj, "target", path), f"{path}.target", "coalgebra")
        blocks = self._get(obj, "blocks", path, dict)
        bs, bt = src.degree_blocks(), tgt.degree_blocks()
        ent = []
        for key, rows in blocks.items():
            try:
                deg = int(key)
            except ValueError:
                raise FixtureError(f"block key {key!r} is not a degree", f"{path}.blocks") from None
            ri, ci = bt.get(deg, []), bs.get(deg, [])
            m = self._dense(rows, f"{path}.blocks.{key}", (len(ri), len(ci)))
            for r, row in enumerate(m.rows):
                for c, v in row.items():
                    ent.append((ri[r], ci[c], v))
        mat = Matrix.from_entries(self.fld, tgt.dim, src.dim, ent)
        return CoalgebraMorphism(src, tgt, mat, name=name)

    def _context(self, name, obj, path) -> MoritaContext:
        c = self._ref(self.doc.coalgebras, self._get(obj, "C", path), f"{path}.C", "coalgebra")
        d = self._ref(self.doc.coalgebras, self._get(obj, "D", path), f"{path}.D", "coalgebra")
        p = self._ref(self.doc.bicomodules, self._get(obj, "P", path), f"{path}.P", "bicomodule")
        q = self._ref(self.doc.bicomodules, self._get(obj, "Q", path), f"{path}.Q", "bicomodule")
        phi = self._dense(self._get(obj, "phi", path), f"{path}.phi", (c.dim, p.dim * q.dim))
        psi = self._dense(self._get(obj, "psi", path), f"{path}.psi", (d.dim, q.dim * p.dim))
        return MoritaContext(c, d, p, q, phi, psi, obj.get("levels"), name=name)

    def _splits(self, objs, path):
        out = []
        for i, s in enumerate(objs):
            p = f"{path}[{i}]"
            out.append(SplitWitness(self._dense(self._get(s, "section", p), f"{p}.section"),
                                    self._dense(self._get(s, "projection", p), f"{p}.projection")))
        return out

    def _maps(self, objs, path):
        return [None if m is None else self._dense(m, f"{path}[{i}]") for i, m in enumerate(objs)]

    def _certificate(self, name, obj, path) -> CotiltingCertificate:
        c = self._ref(self.doc.coalgebras, self._get(obj, "C", path), f"{path}.C", "coalgebra")
        d = self._ref(self.doc.coalgebras, self._get(obj, "D", path), f"{path}.D", "coalgebra")
        t = self._ref(self.doc.bicomodules, self._get(obj, "T", path), f"{path}.T", "bicomodule")
        wc = [self._dense(m, f"{path}.witness_C[{i}]", (t.dim, t.dim))
              for i, m in enumerate(self._get(obj, "witness_C", path, list))]
        wd = [self._dense(m, f"{path}.witness_D[{i}]", (t.dim, t.dim))
              for i, m in enumerate(self._get(obj, "witness_D", path, list))]
        a = self._get(obj, "add_sequence", path, dict)
        ap = f"{path}.add_sequence"
        add = AddSequence([self._ref(self.doc.comodules, n, f"{ap}.objects[{i}]", "comodule")
                           for i, n in enumerate(self._get(a, "objects", ap, list))],
                          self._maps(self._get(a, "maps", ap, list), f"{ap}.maps"),
                          list(self._get(a, "powers", ap, list)),
                          self._splits(self._get(a, "splits", ap, list), f"{ap}.splits"))
        s = self._get(obj, "injective_sequence", path, dict)
        sp = f"{path}.injective_sequence"
        inj = InjectiveSequence([self._ref(self.doc.bicomodules, n, f"{sp}.objects[{i}]", "bicomodule")
                                 for i, n in enumerate(self._get(s, "objects", sp, list))],
                                self._maps(self._get(s, "maps", sp, list), f"{sp}.maps"),
                                list(self._get(s, "cofree_ranks", sp, list)),
                                self._splits(self._get(s, "splits", sp, list), f"{sp}.splits"))
        return CotiltingCertificate(c, d, t, wc, wd, add, inj, obj.get("n_max", 4), name=name)


def loads(text: str, field_override: Optional[Field] = None) -> FixtureDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FixtureError(f"malformed JSON: {e.msg}", line=e.lineno, column=e.colno) from None
    if not isinstance(data, dict):
        raise FixtureError("document must be a JSON object")
    fld = field_override or parse_field(data.get("field", None))
    return _Reader(data, fld).read()


def parse(path: Union[str, Path], field_override: Optional[Field] = None) -> FixtureDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FixtureError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, field_override)


# ---------------------------------------------------------------------------
# serialization


def _dense_out(m: Matrix, fld: Field):
    return [[coeff_str(x, fld) for x in row] for row in m.to_dense()]


def _basis_out(x):
    return [{"label": l, "degree": d} for l, d in zip(x.labels, x.degrees)]


def _diff_out(x, fld):
    return [{"on": x.labels[i], "to": x.labels[t], "coeff": coeff_str(v, fld)}
            for i, ts in enumerate(x.diff) for t, v in ts]


def _coaction_out(terms, own, other, fld):
    return [{"on": own[i], "c": other[c], "m": own[m], "coeff": coeff_str(v, fld)}
            for i, ts in enumerate(terms) for c, m, v in ts]


def document_to_data(doc: FixtureDocument, description: Optional[str] = None) -> dict:
    fld = doc.field
    out: dict = {"format": FORMAT_VERSION, "field": field_spec(fld)}
    description = description or doc.description
    if description:
        out["description"] = description
    if doc.coalgebras:
        out["coalgebras"] = {
            n: {"basis": _basis_out(c),
                "comultiplication": [{"on": c.labels[i], "left": c.labels[a], "right": c.labels[b],
                                      "coeff": coeff_str(v, fld)} for i, ts in enumerate(c.comult) for a, b, v in ts],
                "counit": {c.labels[i]: coeff_str(v, fld) for i, v in enumerate(c.counit) if v != 0},
                "differential": _diff_out(c, fld)}
            for n, c in doc.coalgebras.items()}
    if doc.comodules:
        out["comodules"] = {
            n: {"over": _name_of(doc.coalgebras, m.coalgebra), "side": m.side, "basis": _basis_out(m),
                "coaction": _coaction_out(m.coaction, m.labels, m.coalgebra.labels, fld),
                "differential": _diff_out(m, fld)}
            for n, m in doc.comodules.items()}
    if doc.bicomodules:
        out["bicomodules"] = {
            n: {"left": _name_of(doc.coalgebras, x.left), "right": _name_of(doc.coalgebras, x.right),
                "basis": _basis_out(x),
                "left_coaction": _coaction_out(x.left_coaction, x.labels, x.left.labels, fld),
                "right_coaction": [{"on": x.labels[i], "m": x.labels[m], "c": x.right.labels[c],
                                    "coeff": coeff_str(v, fld)} for i, ts in enumerate(x.right_coaction)
                                   for c, m, v in ts],
                "differential": _diff_out(x, fld)}
            for n, x in doc.bicomodules.items()}
    if doc.morphisms:
        out["morphisms"] = {}
        for n, f in doc.morphisms.items():
            bs, bt = f.source.degree_blocks(), f.target.degree_blocks()
            out["morphisms"][n] = {
                "source": _name_of(doc.coalgebras, f.source), "target": _name_of(doc.coalgebras, f.target),
                "blocks": {str(d): _dense_out(f.matrix.submatrix(bt.get(d, []), cols), fld)
                           for d, cols in sorted(bs.items())}}
    if doc.contexts:
        out["contexts"] = {
            n: {"C": _name_of(doc.coalgebras, x.c), "D": _name_of(doc.coalgebras, x.d),
                "P": _name_of(doc.bicomodules, x.p), "Q": _name_of(doc.bicomodules, x.q),
                "phi": _dense_out(x.phi, fld), "psi": _dense_out(x.psi, fld),
                **({"levels": x.levels} if x.levels is not None else {})}
            for n, x in doc.contexts.items()}
    if doc.certificates:
        out["certificates"] = {}
        for n, x in doc.certificates.items():
            a, s = x.add_sequence, x.injective_sequence
            out["certificates"][n] = {
                "C": _name_of(doc.coalgebras, x.c), "D": _name_of(doc.coalgebras, x.d),
                "T": _name_of(doc.bicomodules, x.t),
                "witness_C": [_dense_out(m, fld) for m in x.witness_c],
                "witness_D": [_dense_out(m, fld) for m in x.witness_d],
                "add_sequence": {
                    "objects": [_name_of(doc.comodules, o) for o in a.objects],
                    "maps": [None if m is None else _dense_out(m, fld) for m in a.maps],
                    "powers": list(a.powers),
                    "splits": [{"section": _dense_out(w.section, fld), "projection": _dense_out(w.projection, fld)}
                               for w in a.splits]},
                "injective_sequence": {
                    "objects": [_name_of(doc.bicomodules, o) for o in s.objects],
                    "maps": [None if m is None else _dense_out(m, fld) for m in s.maps],
                    "cofree_ranks": list(s.cofree_ranks),
                    "splits": [{"section": _dense_out(w.section, fld), "projection": _dense_out(w.projection, fld)}
                               for w in s.splits]},
                "n_max": x.n_max}
    return out


def _name_of(table: dict, obj) -> str:
    for n, o in table.items():
        if o is obj:
            return n
    for n, o in table.items():
        if o == obj:
            return n
    raise FixtureError(f"object {getattr(obj, 'name', obj)!r} is referenced but not named in the document")


def dumps(doc: FixtureDocument, description: Optional[str] = None) -> str:
    return json.dumps(document_to_data(doc, description), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# reports


def emit(report: dict, fmt: str = "json") -> str:
    """Render a report; JSON output has sorted keys and is byte-stable."""
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "text":
        lines: List[str] = []
        _text(report, 0, lines)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _text(x, indent: int, lines: List[str]):
    pad = "  " * indent
    if isinstance(x, dict):
        for k in sorted(x):
            v = x[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                _text(v, indent + 1, lines)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(x, list):
        if all(not isinstance(v, (dict, list)) for v in x):
            lines.append(pad + ", ".join(_scalar(v) for v in x))
        else:
            for v in x:
                lines.append(f"{pad}-")
                _text(v, indent + 1, lines)
    else:
        lines.append(pad + _scalar(x))


def _scalar(v) -> str:
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "none"
    return str(v)
