#!/usr/bin/env python3
"""Smoke test for the penlog_py extension module.

Builds nothing itself: run `cargo build -p penlog-py` first (or pass
--release and build with --release). The script locates the compiled
cdylib, stages it under an importable name, and drives the bindings
through the documented examples.
"""

import argparse
import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent

PK1 = """\
inf a
10 b | c
5 !b
7 !c
"""

INFERENCE_KB = """\
inf a | b
5 !a
4 !a | !b
2 b -> !c
1 a -> c
"""

GRAPH5 = """\
p edge 5 5
e 1 2
e 2 3
e 2 4
e 3 4
e 4 5
"""


def stage_module(profile: str) -> Path:
    suffixes = [".so", ".dylib"]
    candidates = [
        REPO_ROOT / "target" / profile / f"libpenlog_py{suffix}" for suffix in suffixes
    ]
    candidates.append(REPO_ROOT / "target" / profile / "penlog_py.dll")
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            f"no compiled module under target/{profile}; "
            f"run `cargo build -p penlog-py` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="penlog-py-"))
    ext = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(built, stage / f"penlog_py{ext}")
    return stage


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--release", action="store_true", help="use target/release")
    args = parser.parse_args()

    stage = stage_module("release" if args.release else "debug")
    sys.path.insert(0, str(stage))
    import penlog_py as pl

    print(f"penlog_py {pl.__version__}")

    # formula parsing and classical entailment
    assert pl.check_formula("a & (b | c)") == "a & (b | c)"
    assert pl.entails("a & b", "a")
    assert not pl.entails("a", "a & b")

    # interpretation costs of the documented base
    kb = pl.PenaltyKb(PK1)
    assert len(kb) == 4
    assert kb.atoms() == ["a", "b", "c"]
    assert kb.interpretation_cost({"a": True, "b": True, "c": False}) == "5"
    assert kb.interpretation_cost({"a": False, "b": True, "c": True}) == "inf"
    assert kb.interpretation_cost({"a": True, "b": True, "c": True}) == "12"

    # minimum-cost search and consistency costs
    optimum, witnesses = kb.solve()
    assert optimum == "5"
    assert witnesses == [{"a": True, "b": True, "c": False}]
    assert kb.consistency_cost("a & b") == "5"
    assert kb.consistency_cost("a -> c") == "7"
    assert kb.consistency_cost("!a") == "inf"

    # preferred sub-theories (1-based indices)
    assert kb.preferred_subtheories() == [("5", [1, 2, 4])]
    assert kb.preferred_subtheories("a -> c") == [("7", [1, 2, 3])]
    assert kb.hard_core() == ["a"]

    # nonmonotonic entailment walkthrough
    nk = pl.PenaltyKb(INFERENCE_KB)
    assert nk.nm_entails("T", "!c")
    assert nk.nm_entails("a", "c")
    assert nk.nm_entails("a & b", "!c")
    assert not nk.nm_entails("a", "!c")
    assert nk.nm_entails_by_subtheories("a", "c")

    # base equivalence and normalization
    pk2 = pl.PenaltyKb("5 a\n3 a\n10 b\n")
    pk3 = pl.PenaltyKb("8 a\n10 b\n")
    pk4 = pl.PenaltyKb("18 a & b\n")
    assert pk2.equivalent(pk3)
    assert not pk3.equivalent(pk4)
    assert pk3.less_expensive(pk4)
    assert pk2.normalize().to_pkb() == "8 a\n10 b\n"

    # belief-function correspondences
    assert kb.contour_deviation() <= 1e-9
    assert kb.infinitesimal_order("a & b") == ("5", 1)
    assert kb.infinitesimal_order("F") == ("inf", 0)

    # clique encoding and WCNF export
    assert pl.max_clique(GRAPH5) == ["v2", "v3", "v4"]
    assert "inf !v1 | !v3" in pl.encode_max_clique(GRAPH5)
    assert "p wcnf 3 4 23" in kb.to_wcnf()

    # errors surface as ValueError
    try:
        pl.PenaltyKb("0 a\n")
    except ValueError:
        pass
    else:
        raise AssertionError("zero penalty must be rejected")

    print("smoke test OK")


if __name__ == "__main__":
    main()
