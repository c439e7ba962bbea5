#!/usr/bin/env python3
"""Smoke test for the _replchain extension module.

Builds the cdylib if necessary (cargo build -p replchain-py), stages it under
its Python import name, and exercises the main types and operations.
"""

import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]

CHECKS = 0


def check(actual, expected, what):
    global CHECKS
    if actual != expected:
        raise SystemExit(f"FAIL {what}: got {actual!r}, expected {expected!r}")
    CHECKS += 1
    print(f"ok: {what}")


def locate_library():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("lib_replchain.so", "lib_replchain.dylib", "_replchain.dll")
    ]
    for path in candidates:
        if path.exists():
            return path
    subprocess.run(["cargo", "build", "-p", "replchain-py"], cwd=ROOT, check=True)
    for path in candidates:
        if path.exists():
            return path
    raise SystemExit("could not find the built _replchain library")


def main():
    library = locate_library()
    staging = tempfile.mkdtemp(prefix="replchain_smoke_")
    shutil.copy2(library, pathlib.Path(staging) / "_replchain.so")
    sys.path.insert(0, staging)

    import _replchain as rc

    # engine semantics
    check(rc.replace("111", "11", "1"), "11", "replace is leftmost non-overlapping")
    check(rc.replace("1111", "11", "111"), "111111", "replace never rescans emitted text")
    check(rc.translate("2021", "023456789", "111111111"), "1111", "translate maps digits")

    # chains and tasks
    intro = rc.Chain.intro()
    check(intro.apply("1" * 34), "1", "intro chain reduces 34 ones")
    check(intro.apply("1" * 35), "11", "intro chain fails at 35 ones")
    check(intro.max_solved(100), ("exact", 34), "intro chain solves exactly R(34)")
    check(intro.solves(32), True, "intro chain covers 32-character runs")
    check(intro.normalize("ab12345678901234567890123456789012cd"), "ab1cd", "normalize digit runs")

    t3 = rc.Chain.theorem3(5)
    check(t3.unary_rules(), [(1, 4), (5, 1), (3, 0)], "three-rule construction at m=5")
    check(t3.solves(5), True, "three-rule chain solves R(5)")

    parsed = rc.Chain.parse(t3.to_text())
    check(parsed.rules(), t3.rules(), "chain text format round trip")

    ld = rc.Chain.length_decreasing(4)
    check(ld.unary_rules(), [(6, 1), (3, 1), (2, 1), (2, 1)], "optimal 4-rule chain")
    check(ld.solves(40), True, "4-rule chain solves R(40)")
    check(ld.solves(41), False, "4-rule chain fails R(41)")

    # length arithmetic
    check(rc.rule_length_map(2, 3, 5), 7, "length map")
    check(rc.chain_length_map([(4, 1), (3, 1), (2, 1), (2, 1)], 35), 2, "chain length map")
    check(rc.image_range(4, 1, 10), (1, 4, True), "image range is consecutive")
    check(rc.max_reach(6, 10), 40, "reach of (6 -> 1) over [1, 10]")
    check(rc.reach_sequence(4), [2, 4, 10, 40], "reach sequence prefix")
    check(rc.a159860(5), 460, "reach recurrence term")

    # search
    check(rc.refute_depth(5, 2, max_ell=12, max_r=12), (True, 1320), "depth-2 refutation for R(5)")
    depth, chain = rc.find_min_depth(4)
    check(depth, 2, "minimal depth for R(4)")
    check(rc.Chain(chain_rules(chain)).solves(4), True, "found chain verifies")

    # sql emission
    check(
        intro.to_sql(),
        "REPLACE(REPLACE(REPLACE(REPLACE(TRANSLATE(s, '023456789', '111111111'), "
        "'1111', '1'), '111', '1'), '11', '1'), '11', '1')",
        "sql emission with defaults",
    )

    # corpus + scanner baseline
    corpus = rc.generate_corpus(seed=1, count=100, max_len=32, density=0.5)
    check(len(corpus), 100, "corpus size")
    check(corpus, rc.generate_corpus(seed=1, count=100, max_len=32, density=0.5), "corpus determinism")
    agree = all(intro.normalize(s) == rc.scanner_normalize(s) for s in corpus)
    check(agree, True, "chain and scanner agree on the corpus")

    # error surfaces
    try:
        rc.replace("11", "", "1")
        raise SystemExit("FAIL: empty pattern must raise")
    except ValueError:
        print("ok: empty pattern raises ValueError")
    try:
        rc.a159860(9)
        raise SystemExit("FAIL: a(9) must overflow")
    except OverflowError:
        print("ok: a(9) raises OverflowError")

    print(f"smoke test passed: {CHECKS + 2} checks")


def chain_rules(pairs):
    return [("1" * ell, "1" * r) for ell, r in pairs]


if __name__ == "__main__":
    main()
