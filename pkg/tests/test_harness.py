import json
import subprocess

import pytest

from ncds.cli import main as cli_main
from ncds.harness import (conjecture_scan, coface_pullback, index_pairs,
                          one_loop_equivalence, prop_sum_failures, space,
                          verify_theorem_A, verify_theorem_B, verify_theorem_C,
                          verify_theorem_D, verify_theorem_E, _dot)
from ncds.barwords import bar_double, pair
from ncds.braid import insert_triple
from ncds.series import series_to_json

from conftest import random_lie, x_series


class TestPullback:
    def test_matches_direct_pairing(self, rng):
        legs = {"451": (4, 5, 1), "123": (1, 2, 3), "432": (4, 3, 2),
                "215": (2, 1, 5), "543": (5, 4, 3)}
        for w in (3, 4):
            psi = random_lie(w, rng)
            for a, b in index_pairs(w):
                bar = bar_double(a, b, ("y", "x"))
                for name, (i, j, k) in legs.items():
                    direct = pair(bar, insert_triple(psi, i, j, k))
                    via = _dot(coface_pullback(bar, name), psi)
                    assert direct == via

    def test_lemma_432_1_anchor(self):
        # pullback through 432 of l^{y,x}_{(1..1)_k,(1)} is exactly
        # (-1)^(k+1) x0^k x1
        for k in (1, 2, 3, 4):
            F = coface_pullback(bar_double((1,) * k, (1,), ("y", "x")), "432")
            assert F == x_series({"0" * k + "1": (-1) ** (k + 1)}, k + 1)

    def test_alpha_functional_matches_expanded_defect(self, rng):
        # heavyweight route: pair every bar word against the fully expanded
        # pentagon defect and compare with the pullback functional
        from ncds.braid import defect
        from ncds.harness import ALPHA_LEGS, pentagon_functional
        for w in (3, 4, 5):
            psi = random_lie(w, rng)
            alpha = defect(psi)
            for a, b in index_pairs(w):
                for order in (("y", "x"), ("x", "y")):
                    bar = bar_double(a, b, order)
                    assert pair(bar, alpha) == \
                        _dot(pentagon_functional(bar, ALPHA_LEGS), psi)


class TestVerifiers:
    def test_theorem_A_small(self):
        rep = verify_theorem_A(4)
        assert rep.ok
        assert [e.status for e in rep.weights] == ["report-only", "pass", "pass"]

    def test_theorem_B_small(self):
        rep = verify_theorem_B(4)
        assert rep.ok
        assert rep.weights[-1].dims == {"dmr0": 0, "bar_kernel": 0, "constraints": 9}

    def test_theorem_C_small(self):
        rep = verify_theorem_C(4)
        assert rep.ok

    def test_theorem_D_small(self):
        rep = verify_theorem_D(5)
        assert rep.ok
        assert {e.w: e.dims["rc0"] for e in rep.weights} == {3: 1, 4: 0, 5: 1}

    def test_theorem_E_small(self):
        rep = verify_theorem_E(4)
        assert rep.ok
        assert rep.weights[0].dims["h_cyclic_invariant"] is True

    def test_conjecture_report_only(self):
        rep = conjecture_scan(4)
        assert all(e.status == "report-only" for e in rep.weights)

    def test_failure_carries_witness(self):
        # unequal spaces must produce a fail entry with a witness series
        from ncds.harness import _entry_for_equality
        from ncds.lie import SolutionSpace, lyndon_basis
        basis = lyndon_basis(3).series()
        s1 = SolutionSpace("a", 3, [basis[0]])
        s2 = SolutionSpace("b", 3, [basis[1]])
        entry = _entry_for_equality(3, "a", s1, "b", s2)
        assert entry.status == "fail"
        assert entry.witness is not None
        assert entry.to_json()["witness"]["terms"]
        from ncds.harness import CheckReport
        assert not CheckReport("x", [entry]).ok

    def test_weights_parameter(self):
        full = verify_theorem_A(4)
        part = verify_theorem_A(4, weights=[4])
        assert part.weights[0].to_json() == full.weights[-1].to_json()


class TestHarnessInvariants:
    def test_prop_sum(self):
        # eq (sum) on dmr0 basis elements, all index pairs of weight <= 6
        assert prop_sum_failures(6) == []

    def test_one_loop_equivalence(self):
        # depth-one bar kernel = (a,b1)/(b1,a) stuffle cut, weights <= 7
        for w, d1, d2, equal in one_loop_equivalence(7):
            assert equal, w

    def test_theorem_B_constraint_count(self):
        # number of non-all-ones index pairs of weight w
        rep = verify_theorem_B(7)
        for e in rep.weights:
            w = e.w
            assert e.dims["constraints"] == (w - 1) * 2 ** (w - 2) - (w - 1)

    def test_krv2_dimensions_frozen(self):
        # solver output, cross-checked by the dense solve in test_kv
        assert {w: space("krv2", w).dimension for w in range(1, 7)} == \
            {1: 1, 2: 0, 3: 1, 4: 0, 5: 1, 6: 0}


class TestPaperPropositions:
    def test_all_ones_alpha_vanishing_for_skew(self, rng):
        # for skew Lie psi with no linear terms, the all-ones pairings of the
        # pentagon defect vanish even without the double-shuffle hypothesis
        from ncds.harness import ALPHA_LEGS, pentagon_functional, _all_ones
        for w in (4, 5, 6):
            psi = random_lie(w, rng, skew=True)
            for k in range(1, w):
                bar = bar_double((1,) * k, (1,) * (w - k), ("y", "x"))
                assert _dot(pentagon_functional(bar, ALPHA_LEGS), psi) == 0

    def test_alpha_pairings_vanish_on_skew_dmr(self):
        # theorem: for skew dmr_0 elements all y,x pairings of alpha vanish,
        # all-ones pairs included
        from ncds.harness import ALPHA_LEGS, pentagon_functional
        from ncds.dshuffle import dmr_space
        for w in (3, 5):
            for psi in dmr_space(w).basis:
                from ncds.lie import is_skew
                assert is_skew(psi)
                for a, b in index_pairs(w):
                    bar = bar_double(a, b, ("y", "x"))
                    assert _dot(pentagon_functional(bar, ALPHA_LEGS), psi) == 0

    def test_depth_one_evaluation_on_dmr(self):
        # l^{y,x}_{(1..1)_k,(1)}(psi_451 + psi_123) = (-1)^(k+1) c_{x0^k x1}(psi)
        from ncds.harness import PHI_LEGS, pentagon_functional
        from ncds.dshuffle import dmr_space
        for w in (3, 5):
            for psi in dmr_space(w).basis:
                k = w - 1
                F = pentagon_functional(bar_double((1,) * k, (1,), ("y", "x")),
                                        PHI_LEGS)
                assert _dot(F, psi) == ((-1) ** (k + 1)) * \
                    psi.coeff(b"\x00" * k + b"\x01")

    def test_corollary_432_all_ones_sum(self):
        # for skew dmr_0 psi the filtered quasi-shuffle sum against psi_432
        # equals the same closed form as the 451+123 sum
        import math
        from fractions import Fraction
        from ncds.dshuffle import dmr_space, sh_le, sigma_compose
        from ncds.harness import pentagon_functional, _all_ones
        for w in (3, 5):
            for psi in dmr_space(w).basis:
                for k in range(1, w):
                    l = w - k
                    total = 0
                    for s in sh_le(k, l):
                        (first, second), tag = sigma_compose(s, (1,) * k, (1,) * l)
                        if tag != "y,x" or not _all_ones(first, second):
                            continue
                        F = pentagon_functional(bar_double(first, second, ("y", "x")),
                                                ((1, "432"),))
                        total += _dot(F, psi)
                    coeff = Fraction(math.factorial(k + l - 1),
                                     math.factorial(k) * math.factorial(l))
                    expected = ((-1) ** (k + l)) * coeff \
                        * psi.coeff(b"\x00" * (k + l - 1) + b"\x01")
                    assert total == expected, (w, k, l)


class TestSpacesRegistry:
    def test_names(self):
        assert space("rc", 2).dimension == 1
        assert space("rc0", 2).dimension == 0
        assert space("dmr0", 3).dimension == 1
        assert space("krv2", 1).dimension >= 1
        assert space("krv1skew", 3).dimension == 1
        assert space("conj2", 3).dimension == 1
        with pytest.raises(ValueError):
            space("nope", 3)


class TestCli:
    def run(self, *argv):
        return cli_main(list(argv))

    def test_spaces_stdout(self, capsys):
        assert self.run("spaces", "--set", "rc0", "--weight", "3") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["dimension"] == 1 and data["space"] == "rc0"

    def test_spaces_lambda(self, capsys):
        assert self.run("spaces", "--set", "rc", "--weight", "2",
                        "--lambda", "3/2") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["offset"]["terms"][0]["num"] == "3"
        assert data["offset"]["terms"][0]["den"] == "2"

    def test_spaces_lambda_inconsistent(self, capsys):
        assert self.run("spaces", "--set", "rc", "--weight", "3",
                        "--lambda", "1") == 2

    def test_verify_pass_exit_code(self, capsys, tmp_path):
        out = tmp_path / "rep.json"
        assert self.run("verify", "--theorem", "C", "--max-weight", "4",
                        "--out", str(out)) == 0
        data = json.loads(out.read_text())
        assert data["check"] == "theorem_C"

    def test_residual_zero_and_nonzero(self, tmp_path, capsys):
        from ncds.lie import lyndon_basis
        b = lyndon_basis(3).series()
        member = b[0] - b[1]
        f = tmp_path / "psi.json"
        f.write_text(json.dumps(series_to_json(member)))
        assert self.run("residual", "--check", "rc", "--in", str(f)) == 0
        capsys.readouterr()
        g = tmp_path / "half.json"
        g.write_text(json.dumps(series_to_json(b[0])))
        assert self.run("residual", "--check", "rc", "--in", str(g)) == 1

    def test_residual_all_checks(self, tmp_path, capsys):
        from ncds.lie import lyndon_basis
        b = lyndon_basis(3).series()
        member = b[0] - b[1]
        f = tmp_path / "psi.json"
        f.write_text(json.dumps(series_to_json(member)))
        # psi3 satisfies all of dmr, krv1, and the nc-krv2 equation
        for check in ("dmr", "krv1", "nckrv2"):
            assert self.run("residual", "--check", check, "--in", str(f)) == 0
            data = json.loads(capsys.readouterr().out)
            assert data["zero"] is True and data["check"] == check
        # the weight-2 commutator fails krv1
        g = tmp_path / "com.json"
        g.write_text(json.dumps(series_to_json(x_series({"01": 1, "10": -1}, 2))))
        assert self.run("residual", "--check", "krv1", "--in", str(g)) == 1
        data = json.loads(capsys.readouterr().out)
        assert data["zero"] is False

    def test_residual_input_error(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text(json.dumps(series_to_json(x_series({"01": 1}, 2))))
        # not a Lie series: precondition violation is an input error
        assert self.run("residual", "--check", "rc", "--in", str(f)) == 2

    def test_missing_file_is_input_error(self, capsys):
        assert self.run("residual", "--check", "rc", "--in", "/nonexistent") == 2

    def test_conjecture(self, capsys):
        assert self.run("conjecture", "--max-weight", "3") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["weights"][0]["status"] == "report-only"

    def test_determinism_byte_identical(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        self.run("conjecture", "--max-weight", "4", "--out", str(a))
        self.run("conjecture", "--max-weight", "4", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()
        c = tmp_path / "c.json"
        d = tmp_path / "d.json"
        self.run("verify", "--theorem", "A", "--max-weight", "4", "--out", str(c))
        self.run("verify", "--theorem", "A", "--max-weight", "4", "--out", str(d))
        assert c.read_bytes() == d.read_bytes()

    def test_threads_env_same_report(self, tmp_path, monkeypatch):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        self.run("verify", "--theorem", "B", "--max-weight", "4", "--out", str(a))
        monkeypatch.setenv("NCDS_THREADS", "3")
        self.run("verify", "--theorem", "B", "--max-weight", "4", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_cache_dir(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("NCDS_CACHE_DIR", str(tmp_path / "cache"))
        assert self.run("spaces", "--set", "dmr0", "--weight", "3") == 0
        first = capsys.readouterr().out
        files = list((tmp_path / "cache").iterdir())
        assert len(files) == 1
        assert self.run("spaces", "--set", "dmr0", "--weight", "3") == 0
        second = capsys.readouterr().out
        assert first == second

    def test_cache_round_trip_pair_basis(self, tmp_path, monkeypatch, capsys):
        # krv2 bases serialize as tangential pairs and reload identically
        monkeypatch.setenv("NCDS_CACHE_DIR", str(tmp_path / "cache"))
        assert self.run("spaces", "--set", "krv2", "--weight", "3") == 0
        first = capsys.readouterr().out
        assert self.run("spaces", "--set", "krv2", "--weight", "3") == 0
        second = capsys.readouterr().out
        assert first == second
        assert json.loads(first)["basis"][0].keys() == {"a1", "a2"}

    def test_entry_point_installed(self):
        proc = subprocess.run(["ncds", "--version"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert "ncds" in proc.stdout
