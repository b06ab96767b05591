#!/usr/bin/env python3
"""Smoke test for the logleaf_py extension module.

Builds are produced by cargo; this script locates the compiled cdylib under
target/, exposes it as an importable module, and runs a few end-to-end
checks. Run it as:

    cargo build -p logleaf-py --release
    python3 python/smoke_test.py
"""

import json
import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def import_logleaf():
    names = {
        "linux": ("liblogleaf_py.so", "logleaf_py.so"),
        "darwin": ("liblogleaf_py.dylib", "logleaf_py.so"),
    }
    built_name, import_name = names.get(sys.platform[:6], names["linux"])
    candidates = [
        ROOT / "target" / "release" / built_name,
        ROOT / "target" / "debug" / built_name,
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit(
            "no compiled extension found; run `cargo build -p logleaf-py --release` first"
        )
    newest = max(built, key=lambda p: p.stat().st_mtime)
    stage = Path(tempfile.mkdtemp(prefix="logleaf_py_"))
    shutil.copy2(newest, stage / import_name)
    sys.path.insert(0, str(stage))
    import logleaf_py

    return logleaf_py


CHECKS = []


def check(fn):
    CHECKS.append(fn)
    return fn


@check
def hermite_and_smith(m):
    a = m.IntegerMatrix([[2, 4], [6, 8]])
    h, u = a.hermite_normal_form()
    assert h.to_rows() == [[2, 0], [0, 4]], h.to_rows()
    assert u.rows == 2 and u.cols == 2
    snf = a.smith_normal_form()
    assert snf.diagonal() == [2, 4], snf.diagonal()
    assert snf.torsion_factors() == [2, 4]

    ident = m.IntegerMatrix.identity(3)
    h, u = ident.hermite_normal_form()
    assert h == ident and u == ident


@check
def kernels_and_quotients(m):
    a = m.IntegerMatrix([[1], [1], [-2]])
    kernel = a.left_kernel()
    assert kernel.rank == 2
    assert kernel.contains([1, -1, 0])
    assert kernel.contains([1, 1, 1])
    assert not kernel.contains([1, 0, 0])

    z2 = m.Lattice.full(2)
    sub = m.Lattice.from_generators(2, [[2, 0], [0, 3]])
    q = z2.quotient_by(sub)
    assert q.free_rank == 0 and q.torsion == [6], (q.free_rank, q.torsion)
    assert str(q) == "Z/6"


@check
def residue_algebra(m):
    basis = m.SymbolBasis(["1", "sqrt2"], {"1": 1.0, "sqrt2": math.sqrt(2)})
    r0 = m.ResidueVector(basis, {"1": 1})
    r1 = m.ResidueVector(basis, {"sqrt2": "1"})
    r2 = m.ResidueVector(basis, {"1": "-1", "sqrt2": "-1"})
    k = m.relation_lattice([r0, r1, r2])
    assert k.rank == 1
    assert k.basis() == [[1, 1, 1]]

    outcome = m.residue_theorem_check([1, 1, 1], [r0, r1, r2])
    assert outcome["satisfied"] is True

    bad = m.residue_theorem_check([1, 2, 1], [r0, r1, r2])
    assert bad["satisfied"] is False and "sqrt2" in bad["value"]


@check
def numeric_relations(m):
    scan = m.numeric_relation_candidates([1.0, 1.0, -2.0], height_bound=100, epsilon=1e-9)
    assert scan["heuristic"] is True
    vectors = [c["vector"] for c in scan["candidates"]]
    assert ["1", "1", "1"] in vectors, vectors
    assert ["1", "-1", "0"] in vectors, vectors

    empty = m.numeric_relation_candidates([1.0, math.pi], height_bound=1000, epsilon=1e-9)
    assert empty["candidates"] == []


@check
def pencil_spec_pipeline(m):
    spec = m.parse_spec(
        json.dumps(
            {
                "ambient": {"type": "projective", "dim": 3},
                "basis": {"symbols": ["1"]},
                "components": [
                    {"name": "F0", "degree": 3, "residue": {"1": "1"}},
                    {"name": "F1", "degree": 3, "residue": {"1": "-1"}},
                ],
            }
        )
    )
    leaf = spec.leaf_pi1()
    assert str(leaf) == "Z/3"
    complement = spec.complement_pi1()
    assert complement.free_rank == 1 and complement.torsion == [3]
    assert spec.resonance_classify()["status"] == "non-resonant"

    report = spec.connectivity_report()
    assert report["pi1_leaf"]["pretty"] == "Z/3"
    assert report["headline"] is None
    assert len(report["assumptions"]) == 4

    # round trip through JSON
    again = m.parse_spec(spec.to_json())
    assert str(again.leaf_pi1()) == "Z/3"


@check
def degree_vector_errors(m):
    spec = m.parse_spec(
        json.dumps(
            {
                "ambient": {"type": "projective", "dim": 3},
                "basis": {"symbols": ["1"]},
                "components": [
                    {"degree": 1, "residue": {"1": 1}},
                    {"degree": 1, "residue": {"1": 1}},
                    {"degree": 1, "residue": {"1": -1}},
                ],
            }
        )
    )
    assert spec.warnings, "expected a residue-constraint warning"
    try:
        spec.leaf_pi1()
    except RuntimeError as e:
        assert "degree-weighted residues is 1" in str(e), e
    else:
        raise AssertionError("leaf_pi1 should refuse an unbalanced degree vector")


@check
def period_oracle(m):
    spec = m.parse_spec(
        json.dumps(
            {
                "ambient": {"type": "projective", "dim": 2},
                "basis": {"symbols": ["1"], "numeric": {"1": 1.0}},
                "components": [
                    {
                        "name": n,
                        "degree": 1,
                        "residue": {"1": r},
                        "polynomial": {"terms": [{"coeff": 1.0, "exponents": e}]},
                    }
                    for n, r, e in [
                        ("x", "1", [1, 0, 0]),
                        ("y", "1", [0, 1, 0]),
                        ("z", "-2", [0, 0, 1]),
                    ]
                ],
            }
        )
    )
    report = spec.verify_meridians(tolerance=1e-6, seed=1, samples=1024)
    assert len(report["meridians"]) == 3
    assert all(mer["passed"] for mer in report["meridians"])
    assert report["residue_constraint"]["satisfied"] is True


@check
def explicit_cover(m):
    report = m.explicit_cover_check(
        2,
        [complex(-1.0, 0.0), complex(1.0, 0.0)],
        [[0j, 0j], [1 + 0j, 0j]],
        tolerance=1e-8,
    )
    value = complex(report["value"][0], report["value"][1])
    assert abs(value - complex(0.0, 2.0 * math.pi)) < 1e-9, value


def main():
    m = import_logleaf()
    print(f"logleaf_py {m.__version__}")
    failures = 0
    for fn in CHECKS:
        try:
            fn(m)
        except Exception as e:  # noqa: BLE001 - report and continue
            failures += 1
            print(f"FAIL {fn.__name__}: {e}")
        else:
            print(f"PASS {fn.__name__}")
    if failures:
        sys.exit(f"{failures} smoke checks failed")
    print("all smoke checks passed")


if __name__ == "__main__":
    main()
