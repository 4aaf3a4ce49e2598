import contextlib
import io
import json

import pytest

from knotrep.certify import (Certificate, Exhausted, SearchLimits,
                             certify_nontrivial, verify_certificate)
from knotrep.cli import main
from knotrep.words import builtin_presentation

from conftest import WIRTINGER_TREFOIL


def run_cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


# ------------------------------------------------------------------ certify

def test_certify_trefoil(trefoil):
    cert = certify_nontrivial(trefoil, SearchLimits(max_r=3, max_degree=6))
    assert isinstance(cert, Certificate)
    assert cert.delta_rho.pretty() == "t^2 - t + 1"
    ok, lines = verify_certificate(cert.to_json())
    assert ok, lines


def test_certify_figure8(figure8):
    cert = certify_nontrivial(figure8, SearchLimits(max_r=3, max_degree=6))
    assert isinstance(cert, Certificate)
    assert not cert.delta_rho.is_one
    ok, _ = verify_certificate(cert.to_json())
    assert ok


def test_certify_unknot_exhausts(unknot):
    out = certify_nontrivial(unknot, SearchLimits(max_r=3, max_degree=6))
    assert isinstance(out, Exhausted)
    assert out.reason == "limits"
    # every branched quotient search found only the trivial class
    assert all(count == 1 for _r, _deg, count in out.frontier)
    assert len(out.frontier) == 10


def test_certify_deep_path_produces_dihedral_certificate(trefoil):
    """Drive the search stage directly: the branched route must reproduce
    the degree-three dihedral certificate."""
    from knotrep.covers import branched_cover
    from knotrep.permrep import (extend_periodic, least_period_of_periodic,
                                 periodic_from_rep, search_homs)
    from knotrep.twisted import twisted_alexander_poly
    from knotrep.words import abelianization_map

    eps = abelianization_map(trefoil)
    branched = branched_cover(trefoil, eps, 2)
    reps = [r for r in search_homs(branched.presentation, 3)
            if not r.is_trivial()]
    assert len(reps) == 1
    periodic = periodic_from_rep(branched, reps[0])
    assert least_period_of_periodic(periodic) == 2
    P = extend_periodic(periodic)
    result = twisted_alexander_poly(P)
    assert result.delta_rho.pretty() == "t^4 - t^3 + t - 1"
    assert not result.is_unit


def test_verify_rejects_tampered_certificate(trefoil):
    cert = certify_nontrivial(trefoil, SearchLimits())
    data = cert.to_json()
    data["delta_rho"]["poly"] = [[0, "1"]]
    ok, lines = verify_certificate(data)
    assert not ok
    assert any("FAIL" in line for line in lines)

    data = cert.to_json()
    data["presentation"] += "# tampered\n"
    ok, _ = verify_certificate(data)
    assert not ok


def test_search_limits_validation():
    with pytest.raises(ValueError):
        SearchLimits(max_r=1)
    with pytest.raises(ValueError):
        SearchLimits(time_limit=0)


# ---------------------------------------------------------------------- cli

def test_cli_alexander():
    code, out, _ = run_cli("alexander", "--knot", "trefoil")
    assert code == 0
    assert out == "alexander polynomial: t^2 - t + 1\n"


def test_cli_twisted(d3_rep_file):
    code, out, _ = run_cli("twisted", "--knot", "trefoil",
                           "--rep", str(d3_rep_file))
    assert code == 0
    assert "delta_rho: t^4 - t^3 + t - 1" in out
    assert "delta_0: t - 1" in out


def test_cli_cover_homology_branched():
    code, out, _ = run_cli("cover-homology", "--knot", "trefoil",
                           "--branched", "2")
    assert code == 0
    assert out.strip().endswith("Z/3")


def test_cli_cover_homology_coinvariants(d3_rep_file):
    code, out, _ = run_cli("cover-homology", "--knot", "trefoil",
                           "--rep", str(d3_rep_file), "--cyclic", "2",
                           "--coinvariants")
    assert code == 0
    assert out.strip().endswith("Z^2")


def test_cli_base_change_and_resultant():
    code, out, _ = run_cli("base-change", "--poly", "t^2-t+1", "--power", "2")
    assert (code, out) == (0, "s^2 + s + 1\n")
    code, out, _ = run_cli("resultant", "--f", "t^4-t^3+t-1", "--cyclic", "2")
    assert (code, out) == (0, "0\n")
    code, out, _ = run_cli("resultant", "--f", "t-1", "--g", "t+1")
    assert (code, out) == (0, "2\n")


def test_cli_search_reps():
    code, out, _ = run_cli("search-reps", "--knot", "trefoil", "--degree", "3",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 4
    assert payload["truncated"] is False


def test_cli_certify_and_verify(tmp_path):
    cert_file = tmp_path / "cert.json"
    code, out, _ = run_cli("certify", "--knot", "figure8",
                           "--out", str(cert_file))
    assert code == 0
    assert cert_file.exists()
    code, out, _ = run_cli("verify", str(cert_file))
    assert code == 0
    assert "verified" in out

    data = json.loads(cert_file.read_text())
    data["least_period"] = 5
    bad_file = tmp_path / "bad.json"
    bad_file.write_text(json.dumps(data))
    code, out, _ = run_cli("verify", str(bad_file))
    assert code == 1


def test_cli_certify_unknot_exit_code():
    code, out, _ = run_cli("certify", "--knot", "unknot")
    assert code == 1
    assert "exhausted" in out


def test_cli_presentation_file(tmp_path):
    pres_file = tmp_path / "wirt.txt"
    pres_file.write_text(WIRTINGER_TREFOIL)
    code, out, _ = run_cli("alexander", "--pres", str(pres_file))
    assert code == 0
    assert "t^2 - t + 1" in out


def test_cli_input_errors(tmp_path):
    code, _, err = run_cli("alexander", "--knot", "granny")
    assert code == 2
    assert "error:" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("gens: x\nrel: y\n")
    code, _, err = run_cli("alexander", "--pres", str(bad))
    assert code == 2
    code, _, _ = run_cli("alexander")
    assert code == 2
    code, _, _ = run_cli("nonsense")
    assert code == 2


def test_cli_deterministic_output(d3_rep_file):
    runs = [run_cli("twisted", "--knot", "trefoil", "--rep", str(d3_rep_file),
                    "--json") for _ in range(2)]
    assert runs[0] == runs[1]
    search = [run_cli("search-reps", "--knot", "figure8", "--degree", "4",
                      "--json", "--threads", str(k)) for k in (1, 2, 3)]
    assert search[0] == search[1] == search[2]
