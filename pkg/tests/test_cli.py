import json

import pytest

from grayadj.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_adj(capsys):
    code, out, _ = _run(capsys, "check-adj", "psadj.gray")
    assert code == 0
    report = json.loads(out)
    certs = [ch for ch in report["checks"]
             if ch["name"].startswith("swallowtail")]
    assert len(certs) == 2
    assert all(len(ch["certificate"]["steps"]) == 1 for ch in certs)


def test_check_adj_unknown_exits_one(capsys, tmp_path, psadj):
    from grayadj.presentation import render

    path = tmp_path / "weak.gray"
    path.write_text(render(psadj.without_relation("swallowtail1")))
    code, out, _ = _run(capsys, "check-adj", str(path), "--budget", "200")
    assert code == 1
    assert json.loads(out)["verdict"] == "unknown"


def test_malformed_exits_two(capsys, tmp_path):
    path = tmp_path / "bad.gray"
    path.write_text("object X\n1cell F X\n")
    code, _, err = _run(capsys, "check-adj", str(path))
    assert code == 2
    assert "line 2" in err


def test_missing_file_exits_two(capsys, tmp_path):
    code, _, err = _run(capsys, "check-adj", str(tmp_path / "nope.gray"))
    assert code == 2 and err


def test_bad_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["check-adj", "psadj.gray", "--format", "xml"])
    assert exc.value.code == 2


def test_prove_roundtrip_t(capsys):
    code, out, _ = _run(capsys, "prove", "psadj.gray", "--lhs", "t_roundtrip",
                        "--rhs", "t", "--budget", "10000")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "pass"
    assert payload["certificate"]["steps"]


def test_prove_unparallel_exits_two(capsys):
    code, _, err = _run(capsys, "prove", "psadj.gray", "--lhs", "s",
                        "--rhs", "id3(id2(F))")
    assert code == 2 and "parallel" in err


def test_prove_bad_term_exits_two(capsys):
    code, _, _ = _run(capsys, "prove", "psadj.gray", "--lhs", "s ; ;",
                      "--rhs", "s")
    assert code == 2


def test_derive_ext_and_adj(capsys, tmp_path):
    code, out, _ = _run(capsys, "derive-ext", "psadj.gray")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    frag = tmp_path / "derived.gray"
    code, out, _ = _run(capsys, "derive-adj", "psadj.gray", "--out",
                        str(frag))
    assert code == 0
    assert frag.read_text().startswith("# derived-by-uniqueness")


@pytest.mark.parametrize("kind, names", [
    ("op", "U,F,eta,eps,inv(t),inv(s)"),
    ("co", "U,F,eps,eta,inv(t),inv(s)"),
    ("coop", "F,U,eps,eta,s,t"),
])
def test_dual_files_check(capsys, tmp_path, kind, names):
    out_path = tmp_path / f"{kind}.gray"
    code, _, _ = _run(capsys, "dualize", "psadj.gray", "--kind", kind,
                      "--out", str(out_path))
    assert code == 0
    code, out, _ = _run(capsys, "check-adj", str(out_path),
                        "--generators", names)
    assert code == 0, out
    code, _, _ = _run(capsys, "check-adj", str(out_path))
    assert code == 1


def test_bad_generator_names(capsys):
    code, _, err = _run(capsys, "check-adj", "psadj.gray", "--generators",
                        "F,U,eta,eps,s")
    assert code == 2
    code, _, err = _run(capsys, "check-adj", "psadj.gray", "--generators",
                        "F,U,eta,F,s,t")
    assert code == 2 and "2-generator" in err


def test_model_test_catalog(capsys, tmp_path):
    cat = tmp_path / "cat.txt"
    cat.write_text("poset two\nelements 0 1\ncover 0 < 1\n"
                   "poset V\nelements a b t\ncover a < t\ncover b < t\n")
    code, out, _ = _run(capsys, "model-test", str(cat), "--max-poset-size",
                        "2")
    assert code == 0
    assert json.loads(out)["disagreements"] == []


def test_model_test_bad_catalog(capsys, tmp_path):
    cat = tmp_path / "cat.txt"
    cat.write_text("elements a\n")
    assert _run(capsys, "model-test", str(cat))[0] == 2


def test_json_is_deterministic(capsys):
    outs = [_run(capsys, "model-test", "--max-poset-size", "2", "--samples",
                 "15", "--seed", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [_run(capsys, "derive-adj", "psadj.gray")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_text_format(capsys):
    code, out, _ = _run(capsys, "check-adj", "psadj.gray", "--format", "text")
    assert code == 0
    assert out.strip().splitlines()[-1] == "verdict: pass"
