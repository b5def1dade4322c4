"""The bundled fixture library, built from :mod:`dgcoalg.fixtures`.

``python -m dgcoalg.library <dir>`` regenerates the JSON files shipped in
``dgcoalg/data``; the tests check the shipped files match.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Dict, Tuple

from . import fixtures as F
from .coalgebra import DGCoalgebra, regular_bicomodule
from .io import FixtureDocument, dumps, parse
from .linalg import QQ

DATA_DIR = Path(__file__).with_name("data")


def _doc(*coalgebras: DGCoalgebra) -> FixtureDocument:
    doc = FixtureDocument(QQ)
    for c in coalgebras:
        doc.coalgebras[c.name] = c
    return doc


def _add_certificate(doc: FixtureDocument, cert, name: str):
    doc.coalgebras.setdefault(cert.c.name, cert.c)
    doc.coalgebras.setdefault(cert.d.name, cert.d)
    doc.bicomodules.setdefault(cert.t.name, cert.t)
    for o in cert.add_sequence.objects:
        doc.comodules.setdefault(o.name, o)
    for o in cert.injective_sequence.objects:
        doc.bicomodules.setdefault(o.name, o)
    cert.name = name
    doc.certificates[name] = cert


def _add_context(doc: FixtureDocument, ctx, name: str):
    doc.coalgebras.setdefault(ctx.c.name, ctx.c)
    doc.coalgebras.setdefault(ctx.d.name, ctx.d)
    doc.bicomodules.setdefault(ctx.p.name, ctx.p)
    doc.bicomodules.setdefault(ctx.q.name, ctx.q)
    ctx.name = name
    doc.contexts[name] = ctx


def broken_counit() -> DGCoalgebra:
    c = F.divided_powers()
    c.counit = [c.field(1), c.field(1)]
    c.name = "DP-broken-counit"
    return c


def bundled_documents() -> Dict[str, Tuple[FixtureDocument, str]]:
    out: Dict[str, Tuple[FixtureDocument, str]] = {}
    out["trivial"] = (_doc(F.trivial()), "The ground field as a coalgebra.")
    out["grouplikes"] = (_doc(F.grouplikes(2), F.grouplikes(3)), "Coseparable coalgebras spanned by group-likes.")
    out["divided_powers"] = (_doc(F.divided_powers()), "Divided powers truncated at c1.")
    out["matrix_coalgebra"] = (_doc(F.matrix_coalgebra()), "The 2x2 comatrix coalgebra.")

    f, f0 = F.inclusion_into_extension(False), F.inclusion_into_extension(True)
    f0.source = f.source
    f0.name = "f0"
    doc = _doc(f.source, f.target, f0.target)
    doc.morphisms["f"] = f
    doc.morphisms["f0"] = f0
    ctx = F.morphism_context(f)
    ctx.p.name, ctx.q.name = "k[g]_f", "f_k[g]"
    _add_context(doc, ctx, "context of f")
    out["acyclic_extension"] = (doc, "Inclusion of a group-like into an acyclic dg extension D, "
                                     "with the sabotaged variant D0 whose differential vanishes.")

    dp = F.divided_powers()
    doc = _doc(dp)
    cert = F.identity_certificate(dp)
    cert.t.name = "DP as bicomodule"
    cert.add_sequence.objects[0].name = "DP as left comodule"
    cert.injective_sequence.objects[0] = cert.t
    _add_certificate(doc, cert, "identity certificate")
    ctx = F.identity_context(dp)
    ctx.p = ctx.q = cert.t
    _add_context(doc, ctx, "identity context")
    out["identity_certificate"] = (doc, "Identity cotilting certificate and Morita context on DP.")

    cert = F.comatrix_certificate()
    doc = _doc(cert.c, cert.d)
    cert.add_sequence.objects[0].name = "T^2"
    cert.injective_sequence.objects[0] = cert.t
    _add_certificate(doc, cert, "comatrix certificate")
    ctx = F.comatrix_context()
    ctx.c, ctx.d, ctx.q = cert.c, cert.d, cert.t
    ctx.p.left, ctx.p.right = cert.c, cert.d
    _add_context(doc, ctx, "comatrix context")
    out["morita_takeuchi"] = (doc, "T = k^2 relating k and the comatrix coalgebra M2c.")

    doc = FixtureDocument(QQ)
    for kind in ("coend", "sequence", "split"):
        cert = F.defective_certificate(kind)
        if doc.coalgebras:
            cert.c, cert.d = doc.coalgebras["k"], doc.coalgebras["M2c"]
            cert.t = doc.bicomodules["T"]
            cert.add_sequence.objects = [doc.comodules["T^2"]]
        else:
            cert.add_sequence.objects[0].name = "T^2"
        cert.injective_sequence.objects[0] = cert.t
        _add_certificate(doc, cert, f"defect: {kind}")
    ctx = F.comatrix_context()
    ctx.c, ctx.d, ctx.q = doc.coalgebras["k"], doc.coalgebras["M2c"], doc.bicomodules["T"]
    ctx.p.left, ctx.p.right = ctx.c, ctx.d
    ctx.psi = ctx.psi.copy()
    ctx.psi.rows[1] = {1: -1}
    _add_context(doc, ctx, "defect: flipped comparison sign")
    out["defects"] = (doc, "Single-defect mutations of the comatrix certificate and context; every check fails.")

    out["broken_counit"] = (_doc(broken_counit()), "Divided powers with a counit violating the counit law.")
    return out


def bundled_path(name: str) -> Path:
    return DATA_DIR / f"{name}.json"


def load_bundled(name: str) -> FixtureDocument:
    return parse(bundled_path(name))


def write_all(directory: Path = DATA_DIR) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, (doc, desc) in bundled_documents().items():
        doc.description = desc
        (directory / f"{name}.json").write_text(dumps(doc), encoding="utf-8")


if __name__ == "__main__":
    write_all(Path(sys.argv[1]) if len(sys.argv) > 1 else DATA_DIR)
