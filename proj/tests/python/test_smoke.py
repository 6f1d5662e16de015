from pathlib import Path

import pytest

import evtforge

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def sources(*names):
    return evtforge.read_sources(*(FIXTURES / n for n in names))


def test_translate_m0():
    out = evtforge.translate(sources("ebm0.eb"))
    assert [s["name"] for s in out] == ["CD", "M0"]
    m0 = out[1]
    assert m0["text"].startswith("spec M0 =")
    assert any("n′ = 0" in s or "n' = 0" in s for s in m0["sentences"])


def test_models_rex():
    res = evtforge.models(sources("rex.eb"), bound=2)
    assert res["vars"] == ["x", "y"]
    (alg,) = res["algebras"]
    assert alg["init"] == [(0, 1)]
    assert alg["events"]["e"] == [
        ((0, 0), (1, 0)),
        ((0, 1), (1, 0)),
        ((1, 0), (2, 0)),
        ((1, 1), (2, 0)),
    ]


def test_refine_chain_and_failure():
    ok = evtforge.refine(
        sources("ebm0.eb", "ebm1.eb", "ebm2.eb", "refinements.ref"), pins={"d": "1"}, status_warn=True
    )
    assert {r["name"]: r["holds"] for r in ok} == {"REF0": True, "REF1A": True, "REF1B": True}

    bad = evtforge.refine(
        sources("ebm0.eb", "ebm0_weak_guard.eb", "ebm0w.eb", "mutations.ref"), pins={"d": "2"}
    )
    verdicts = {r["name"]: r for r in bad}
    assert not verdicts["WEAKNOINV"]["holds"]
    assert verdicts["WEAKNOINV"]["event"] == "ML_in"
    assert verdicts["WEAKNOINV"]["text"].startswith("fails")


def test_errors_map_to_python_exceptions():
    with pytest.raises(evtforge.ParseError):
        evtforge.translate([("empty.eb", "")])
    with pytest.raises(evtforge.SemanticError):
        evtforge.translate(sources("ebm1.eb"))
    with pytest.raises(evtforge.CeilingError):
        evtforge.models(sources("ebm0.eb"), bound=1000, ceiling=10)
    with pytest.raises(ValueError):
        evtforge.translate(sources("bad_syntax.eb"))
