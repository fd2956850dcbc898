import json
import subprocess
import sys

import pytest

from walshlog.cli import main


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_identities_passes(tmp_path, capsys):
    out = tmp_path / "v.csv"
    code, _, _ = run(["verify-identities", "--nmin", "4", "--nmax", "256", "--jobs", "2", "--out", str(out)],
                     capsys)
    assert code == 0
    assert out.read_text() == "n,check,cell,detail\n"
    manifest = json.loads((tmp_path / "v.csv.manifest.json").read_text())
    assert manifest["failures"] == 0 and manifest["version"] == "0.1.0"
    assert manifest["config"]["nmax"] == 256 and "wall_time" in manifest


def test_verify_identities_fault_injection(capsys):
    code, out, err = run(["verify-identities", "--nmin", "4", "--nmax", "30", "--jobs", "1",
                          "--inject-fault", "17,3"], capsys)
    assert code == 1
    assert "n=17" in err and "cell=3" in err
    assert out.splitlines()[1].startswith("17,decomposition,3,")


def test_verify_identities_double_mode(capsys):
    code, _, _ = run(["verify-identities", "--nmin", "256", "--nmax", "300", "--mode", "double",
                      "--jobs", "1"], capsys)
    assert code == 0


def test_verify_identities_rejects_small_range(capsys):
    code, _, err = run(["verify-identities", "--nmin", "2", "--nmax", "3"], capsys)
    assert code == 2 and "4 <= nmin" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["converge", "--seq", "pow2", "--norm", "l2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["variation", "--seq", "pow2", "--amax", "0"])
    assert e.value.code == 2
    code, _, err = run(["variation", "--seq", "fibonacci"], capsys)
    assert code == 2 and "unknown sequence" in err
    code, _, err = run(["converge", "--seq", "pow2", "--fn", "nope"], capsys)
    assert code == 2


def test_theorem1_sweep_deterministic_across_jobs(tmp_path, capsys):
    paths = []
    for jobs in (1, 3):
        p = tmp_path / f"s{jobs}.csv"
        code, _, _ = run(["theorem1-sweep", "--nmin", "4", "--nmax", "64", "--family-max", "256",
                          "--jobs", str(jobs), "--out", str(p)], capsys)
        assert code == 0
        paths.append(p)
    a, b = (p.read_bytes() for p in paths)
    assert a == b
    lines = a.decode().splitlines()
    assert lines[0] == "n,order,VS,VL,F_l1,ratio,H1_l1,H21_l1,H22_l1,H23_l1,H3_l1"
    assert lines[-1].startswith("# band c=")
    rows = [l.split(",") for l in lines[1:-1]]
    assert [int(r[0]) for r in rows] == sorted(int(r[0]) for r in rows)
    pow2 = [r for r in rows if int(r[0]) in (8, 16, 32, 64, 128, 256)]
    assert all(float(r[3]) == 0 for r in pow2)
    manifest = json.loads((tmp_path / "s3.csv.manifest.json").read_text())
    assert manifest["band"]["C_over_c"] <= 25


def test_theorem1_sweep_json(capsys):
    code, out, _ = run(["theorem1-sweep", "--nmin", "4", "--nmax", "10", "--family-max", "0",
                        "--format", "json", "--timing", "--jobs", "1"], capsys)
    rows = json.loads(out)
    assert code == 0 and [r["n"] for r in rows] == list(range(4, 11))
    assert "wall_time" in rows[0]


def test_variation_konyagin(capsys):
    code, out, err = run(["variation", "--seq", "konyagin", "--amax", "6"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "A,n,bits,VS,VL,mem_sum,runmax_VL,runmax_mem"
    assert len(lines) == 7
    vs = [int(l.split(",")[3]) for l in lines[1:]]
    assert all(a < b for a, b in zip(vs, vs[1:]))
    assert json.loads(err)["classes"]["VS"] == "growing"


def test_converge_pow2_identity(capsys):
    code, out, err = run(["converge", "--seq", "pow2", "--fn", "identity", "--amax", "10"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "A,n,error_sup,error_L1"
    errs = [float(l.split(",")[2]) for l in lines[1:]]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert json.loads(err)["monotone_decreasing"] is True


def test_lebesgue_pow2minus1(capsys):
    code, out, err = run(["lebesgue", "--seq", "pow2minus1", "--amax", "14"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "A,n,F_l1,VL,ratio"
    F = [float(l.split(",")[2]) for l in lines[1:]]
    assert max(F) / min(F) <= 2
    assert json.loads(err)["max_over_min"] <= 2


def test_kernel_dump(tmp_path, capsys):
    code, out, _ = run(["kernel-dump", "--kind", "dirichlet", "--n", "4", "--res", "3"], capsys)
    assert code == 0
    assert out.splitlines() == ["cell,value_num,value_den", "0,4,1", "1,4,1"] + [f"{c},0,1" for c in range(2, 8)]
    code, out, _ = run(["kernel-dump", "--kind", "fejer", "--n", "3", "--mode", "double"], capsys)
    assert out.splitlines()[0] == "cell,value"
    code, out, _ = run(["kernel-dump", "--kind", "riesz_log", "--n", "5", "--format", "json"], capsys)
    assert json.loads(out)["mode"] == "exact"
    code, _, _ = run(["kernel-dump", "--kind", "dirichlet", "--n", "9", "--res", "3"], capsys)
    assert code == 2
    code, _, _ = run(["kernel-dump", "--kind", "nope", "--n", "9"], capsys)
    assert code == 2


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "walshlog", "variation", "--seq", "pow2", "--amax", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.splitlines()[1] == "1,2,10,2,0,0,0,0"
