"""Smoke test for the pytropical extension.

Builds the cdylib with cargo if needed, loads it from a temporary directory
and exercises each binding once. Run from anywhere: python3 python/smoke_test.py
"""

import importlib.util
import json
import os
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    subprocess.run(["cargo", "build", "-q", "-p", "tropical-py"], cwd=ROOT, check=True)
    target = os.environ.get("CARGO_TARGET_DIR", os.path.join(ROOT, "target"))
    lib = os.path.join(target, "debug", "libpytropical.so")
    tmp = tempfile.mkdtemp()
    dst = os.path.join(tmp, "pytropical.so")
    shutil.copy(lib, dst)
    spec = importlib.util.spec_from_file_location("pytropical", dst)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    t = load()
    assert t.__version__

    value, argmax = t.evaluate("0 + x1 + x2", [3, 1])
    assert value == "3", value
    assert [t.monomials("0 + x1 + x2")[i] for i in argmax] == ["x1"]
    value, argmax = t.evaluate("x1*x2 + x1 + x2", [Fraction(2), "0"])
    assert value == "2" and len(argmax) == 2

    assert t.is_simple("0 + x1^2 + 3*x2")
    assert not t.is_simple("x1*x2 + 0")
    assert t.essential("0 + x1 + -5*x1^2 + x1^3") == [0, 3]

    line = t.corner_locus("0 + x1 + x2")
    c = json.loads(line)
    assert len(c["vertices"]) == 1 and len(c["rays"]) == 3

    sub = json.loads(t.subdivision("0 + x1 + x2 + 1*x1*x2"))
    assert len(sub["cells"]) == 2

    ray = "x1*x2 + x1 + x2 ; x1*x2 + x1 + -1*x2"
    assert t.contains(ray, [2, 0])
    assert not t.contains(ray, [0, 5])

    cert = json.loads(t.additivity(line))
    assert cert["verdict"] == "additive", cert
    bad = json.dumps({"dim": 2, "vertices": [], "edges": [], "rays": [],
                      "lines": [{"point": ["0", "0"], "dir": [1, -1], "weight": 1}]})
    cert = json.loads(t.additivity(bad))
    assert cert["verdict"] == "not-additive" and "witness" in cert

    gens = t.synthesize(line)
    assert len(gens) == 1 and t.is_simple(gens[0])
    rep = json.loads(t.verify(";".join(gens), line, samples=100, seed=3))
    assert rep["passed"] and rep["exact_equality"], rep

    tripod = json.dumps({"dim": 3, "vertices": [["0", "0", "0"]], "edges": [], "lines": [],
                         "rays": [{"vertex": 0, "dir": d, "weight": 1}
                                  for d in ([1, 1, 1], [-1, -1, 0], [0, 0, -1])]})
    gens = t.synthesize(tripod)
    assert all(t.is_simple(g) for g in gens)
    assert json.loads(t.verify("\n".join(gens), tripod))["passed"]

    try:
        t.evaluate("x1 +* 2", [1])
    except ValueError as e:
        assert "parse" in str(e) or "expected" in str(e), e
    else:
        raise AssertionError("parse error not raised")

    print("pytropical smoke test: ok")


if __name__ == "__main__":
    sys.exit(main())
