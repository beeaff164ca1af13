"""Smoke test of the `qnc` extension module.

Build and install it first, for example

    pip install maturin patchelf
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/qnc-*.whl

then run `python python/smoke_test.py`.
"""

import math
import os
import tempfile

import qnc


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok   {what}")


def main():
    f1 = qnc.Function.construct(1)
    check(f1.a == "4" and f1.c_hat == "0" and f1.degree == 0, "trivial member has a = 4, c = 0, p = 0")
    jet = f1.f_jet(0.5 + 0.5j, 2)
    check(jet == [4 * (0.5 + 0.5j - 1), 4 + 0j, 0j], "f_1 = 4(z - 1)")

    fs = [qnc.Function.construct(n) for n in range(1, 7)]
    check(all(f.degree <= 4 * f.n - 1 for f in fs), "degree of p_n at most 4n - 1")

    f2 = fs[1]
    for l, z in enumerate(f2.nodes()):
        check(f2.node_residual(l) <= qnc.NODE_TOL, f"node residual of f_2 at {z:.3g}")
        want = -(f2.n - 1) / (2 * z)
        got = sum(k * c * z ** (k - 1) for k, c in enumerate(f2.p_coeffs()) if k)
        check(abs(got - want) <= 1e-10 * abs(want), f"p_2'(z) = -(n-1)/(2z) at {z:.3g}")

    for f in fs:
        ineq = f.verify_inequality(samples=2000)
        nodes = f.verify_node_jets()
        mm = f.max_modulus_check(256)
        check(ineq["passed"] and nodes["passed"] and mm["passed"],
              f"f_{f.n}: inequality {ineq['max_inequality']}, max-modulus {float(mm['max_inequality']):.4f}")

    marty = qnc.marty_probe(fs, center=1 + 0j, radius=0.1)
    check(marty["verdict"] == "blowup", f"Marty measurements {marty['measurements']}")
    lemma = qnc.lemma2_probe(fs[1:], points=[0j], orders=[2])
    check(lemma["verdict"] == "decay", "Lemma-2 decay at z = 0")

    try:
        qnc.marty_probe(fs, center=0.5 + 0j)
    except ValueError as e:
        check("unit circle" in str(e), "off-circle centre rejected")
    else:
        raise SystemExit("FAIL: off-circle centre accepted")

    try:
        fs[5].f_jet(0j)
    except OverflowError:
        check(True, "f_6 at 0 overflows doubles")
    else:
        raise SystemExit("FAIL: f_6 at 0 should overflow")

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "f3.json")
        fs[2].save(path)
        back = qnc.Function.load(path)
        check(back.to_json() == fs[2].to_json(), "save/load round trip is exact")
    check(qnc.Function.from_json(f2.to_json()).a == f2.a, "JSON round trip")

    rows = f1.grid("sphder", "circle:2", 8)
    check(len(rows) == 8 and all(abs(math.exp(v) - 4 / (1 + 16 * abs(z - 1) ** 2)) < 1e-14 for z, v in rows),
          "sphder grid of f_1 matches 4/(1 + 16|z - 1|^2)")
    ratio = f2.grid("ratio", "circle:1", 64)
    check(len(ratio) == 62, "ratio grid omits the nodes of f_2")

    summary = qnc.sweep(1, 3, grid=256, samples=500)
    check(summary["passed"] and len(summary["rows"]) == 3, "sweep 1..3")
    print("smoke test passed")


if __name__ == "__main__":
    main()
