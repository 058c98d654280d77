"""Command line driver: exit codes, JSON envelopes, pipelines."""

import json
import os
import subprocess
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(argv, stdin=None, timeout=300):
    env = dict(os.environ)
    env.setdefault("PYTHONPATH", os.path.join(ROOT, "src"))
    return subprocess.run([sys.executable, "-m", "cylgame.cli"] + argv,
                          input=stdin, capture_output=True, text=True,
                          timeout=timeout, env=env, cwd=ROOT)


def shell(cmd, timeout=300):
    env = dict(os.environ)
    env.setdefault("PYTHONPATH", os.path.join(ROOT, "src"))
    return subprocess.run(cmd, shell=True, capture_output=True, text=True,
                          timeout=timeout, env=env, cwd=ROOT)


CLI = f"{sys.executable} -m cylgame.cli"


# ---- the three contracted examples

def test_build_pipes_into_repsearch():
    r = shell(f"{CLI} build maddux --k 2 | {CLI} repsearch --base 5")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["found"] is True
    assert data["verified"] is True
    assert data["representation"]["base_size"] == 5
    assert all(i <= j for i, j, _ in data["representation"]["edges"])


def test_ef_k4_k3_four_pebbles():
    r = run(["ef", "--left", "K4", "--right", "K3",
             "--p", "4", "--r", "4", "--claim", "forall"])
    assert r.returncode == 0, r.stderr
    assert "forall" in (r.stdout + r.stderr)


def test_game_budget_below_dimension_is_usage_error():
    r = shell(f"{CLI} build fullSet --n 3 --base 2 | "
              f"{CLI} game --variant boldG --m 2")
    assert r.returncode == 2


# ---- check and build

def test_build_check_round_trip(tmp_path):
    p = tmp_path / "e3.ra"
    r = run(["build", "maddux", "--k", "3", "--out", str(p)])
    assert r.returncode == 0
    r = run(["check", "--in", str(p)])
    assert r.returncode == 0


def test_check_json_reports_failures():
    bad = """\
[atoms]
id a
[identity]
id
[converse]
[triples]
id id id
a id a
id a a
"""
    r = run(["check", "--json"], stdin=bad)
    assert r.returncode == 1
    data = json.loads(r.stdout)
    assert data["ok"] is False
    assert data["failures"]


def test_build_unknown_builder():
    r = run(["build", "nonesuch"])
    assert r.returncode == 2


def test_build_json_summary():
    r = run(["build", "bsl", "--g", "3", "--r", "2", "--json",
             "--out", os.devnull])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["atoms"] == 6


# ---- games through the driver

def test_game_ra_json_envelope():
    r = shell(f"{CLI} build maddux --k 2 | "
              f"{CLI} game --variant ra --m 4 --json")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["game"] == "RA"
    assert data["winner"] == "exists"
    assert data["rounds_solved"] is None or isinstance(
        data["rounds_solved"], int)
    assert "wall_time_ms" in data
    assert data["positions_explored"] > 0


def test_game_scripted_cone_verifies():
    r = shell(f"{CLI} build rainbowCA --n 3 --g 4 --r 3 | "
              f"{CLI} game --variant boldG --m 6 --script cone "
              f"--claim forall --json", timeout=600)
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["winner"] == "forall"
    assert data["verified"] is True


def test_game_wrong_claim_exits_1():
    r = shell(f"{CLI} build maddux --k 2 | "
              f"{CLI} game --variant ra --m 4 --claim forall")
    assert r.returncode == 1


def test_ef_verify_cross_checks():
    r = run(["ef", "--left", "K3", "--right", "K3", "--p", "2", "--r", "2",
             "--verify", "--json"])
    assert r.returncode == 0
    assert json.loads(r.stdout)["winner"] == "exists"


# ---- basis / lyndon / split / theta

def test_basis_verb():
    r = shell(f"{CLI} build maddux --k 2 | {CLI} basis --m 4 --json")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["found"] is True
    assert data["info"]["count"] == 26
    assert len(data["members"]) == 26


def test_lyndon_verb():
    r = shell(f"{CLI} build maddux --k 2 | {CLI} lyndon --K 5 --json")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["k"] == 5
    assert data["info"]["via"] == "representation"


def test_split_then_check():
    r = shell(f"{CLI} build maddux --k 2 | "
              f"{CLI} split --targets a1 --copies 3 --lift inherit | "
              f"{CLI} check")
    # three sibling copies break associativity by design: checked negative
    assert r.returncode == 1
    assert "associativity" in r.stdout


def test_split_reds_on_piped_rainbow():
    # the colour model is rebuilt from atom names after the text round trip
    r = shell(f"{CLI} build rainbowCA --n 3 --g 4 --r 3 | "
              f"{CLI} split --targets reds --copies 2 --lift inherit "
              f"--out /dev/null --json")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["targets"] == 1590
    assert data["atoms_after"] == 3369


def test_build_json_embeds_structure_without_out():
    r = run(["build", "maddux", "--k", "1", "--json"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["atoms"] == 2
    assert data["structure"].startswith("[atoms]")


def test_theta_verb():
    r = shell(f"{CLI} build maddux --k 2 | "
              f"{CLI} theta --targets a1 --copies 3 --lift inherit --json")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["ok"] is True
    assert sorted(data["theta"]["a1"]) == ["a1^0", "a1^1", "a1^2"]


# ---- determinism and budgets

def test_certificates_identical_across_jobs(tmp_path):
    outs = []
    for jobs in ("1", "2"):
        p = tmp_path / f"cert{jobs}.json"
        r = shell(f"{CLI} build maddux --k 2 | "
                  f"{CLI} game --variant ra --m 4 --jobs {jobs} "
                  f"--out {p}")
        assert r.returncode == 0, r.stderr
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_unknown_flag_is_usage_error():
    r = run(["check", "--frobnicate"])
    assert r.returncode == 2


def test_max_positions_budget_exit():
    r = shell(f"{CLI} build fullSet --n 3 --base 3 | "
              f"{CLI} game --variant atomic --m 5 --max-positions 3")
    assert r.returncode == 2


def test_env_jobs_equivalent_to_flag(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    r = shell(f"{CLI} build maddux --k 2 | "
              f"{CLI} basis --m 4 --jobs 2 --out {p1}")
    assert r.returncode == 0
    r = shell(f"{CLI} build maddux --k 2 | "
              f"CYLGAME_JOBS=2 {CLI} basis --m 4 --out {p2}")
    assert r.returncode == 0
    assert p1.read_bytes() == p2.read_bytes()


# ---- interactive play

def test_play_quit_saves_partial_transcript(tmp_path):
    p = tmp_path / "transcript.json"
    r = shell(f"printf 'a1\\nquit\\n' | "
              f"{CLI} play --structure maddux:2 --variant ra --m 4 "
              f"--side exists --out {p}")
    assert r.returncode == 0, r.stderr
    data = json.loads(p.read_text())
    assert data["outcome"] == "quit"
    assert data["moves"]


def test_play_rejects_illegal_menu_answer():
    r = shell(f"printf 'zz\\nquit\\n' | "
              f"{CLI} play --structure maddux:2 --variant ra --m 4 "
              f"--side exists")
    assert r.returncode == 0
    assert "illegal move" in r.stdout
    assert "not an option number" in r.stdout


def test_play_rejects_unknown_opening_atom():
    # as the universal player the human names the opening atom
    r = shell(f"printf 'zz\\nquit\\n' | "
              f"{CLI} play --structure maddux:2 --variant ra --m 4 "
              f"--side forall")
    assert r.returncode == 0
    assert "not an atom" in r.stdout


def test_play_human_exists_loses_cone_script(tmp_path):
    # six rounds of cone demands exhaust three reds; the human picks
    # choice 1 blindly and must end up dead whatever the menus offered
    p = tmp_path / "t.json"
    feed = "".join(["1\\n"] * 40)
    r = shell(f"printf '{feed}' | "
              f"{CLI} play --structure rainbowCA:3,4,3 --variant boldG "
              f"--m 6 --side exists --script cone --out {p}", timeout=600)
    assert r.returncode == 1, r.stderr
    data = json.loads(p.read_text())
    assert data["outcome"] == "lost"
