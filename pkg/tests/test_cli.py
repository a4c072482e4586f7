import json
import subprocess
import sys

import numpy as np
import pytest

from grayvss import GrayImage
from grayvss.cli import (
    EXIT_CONTAINER,
    EXIT_DEPTH,
    EXIT_DUPLICATE,
    EXIT_INPUT,
    EXIT_SHAPE,
    EXIT_UNSUPPORTED,
    EXIT_USAGE,
    main,
)
from grayvss.container import read_gray_image, read_share, write_gray_image

from conftest import PAPER_BLOCK


@pytest.fixture
def secret(tmp_path):
    path = tmp_path / "block.pgm"
    write_gray_image(GrayImage.from_rows(PAPER_BLOCK), path, plain=True)
    return path


def split(secret, out, seed=42, *extra):
    return main(["split", str(secret), "--out-dir", str(out), "--seed", str(seed), *extra])


def test_split_reconstruct_all_pairs(tmp_path, secret, capsys):
    assert split(secret, tmp_path / "shares") == 0
    files = sorted((tmp_path / "shares").glob("*.vss3"))
    assert [f.name for f in files] == ["share1.vss3", "share2.vss3", "share3.vss3"]
    for a, b in [(1, 2), (1, 3), (2, 3), (3, 1)]:
        out = tmp_path / f"r{a}{b}.pgm"
        rc = main(["reconstruct", str(files[a - 1]), str(files[b - 1]), "--out", str(out)])
        assert rc == 0
        assert read_gray_image(out).tolist() == PAPER_BLOCK


def test_split_is_byte_identical_per_seed(tmp_path, secret):
    split(secret, tmp_path / "x")
    split(secret, tmp_path / "y")
    split(secret, tmp_path / "z", 43)
    for i in (1, 2, 3):
        x = (tmp_path / "x" / f"share{i}.vss3").read_bytes()
        assert x == (tmp_path / "y" / f"share{i}.vss3").read_bytes()
    assert any((tmp_path / "x" / f"share{i}.vss3").read_bytes() != (tmp_path / "z" / f"share{i}.vss3").read_bytes()
               for i in (1, 2, 3))


def test_split_without_seed(tmp_path, secret):
    assert main(["split", str(secret), "--out-dir", str(tmp_path)]) == 0
    assert read_share(tmp_path / "share2.vss3").index == 2


def test_split_balanced2_records_dist(tmp_path, secret):
    split(secret, tmp_path, 1, "--dist", "balanced2")
    assert read_share(tmp_path / "share1.vss3").dist.name == "BALANCED2"


def test_split_rejects_16_bit(tmp_path, capsys):
    path = tmp_path / "deep.pgm"
    path.write_bytes(b"P5 1 1 65535\n\x00\x01")
    assert split(path, tmp_path / "o") == EXIT_DEPTH
    assert "maxval" in capsys.readouterr().err


def test_split_missing_input(tmp_path):
    assert split(tmp_path / "missing.pgm", tmp_path / "o") == EXIT_INPUT


@pytest.mark.parametrize("argv", [
    ["split", "x.pgm"],
    ["split", "x.pgm", "--out-dir", "d", "--seed", "-1"],
    ["split", "x.pgm", "--out-dir", "d", "--seed", str(2**64)],
    ["split", "x.pgm", "--out-dir", "d", "--dist", "gauss"],
    ["reconstruct", "a"],
    ["analyze"],
    ["analyze", "--montecarlo", "0"],
    ["bogus"],
])
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_reconstruct_duplicate(tmp_path, secret):
    split(secret, tmp_path)
    s1 = str(tmp_path / "share1.vss3")
    assert main(["reconstruct", s1, s1, "--out", str(tmp_path / "o.pgm")]) == EXIT_DUPLICATE


def test_reconstruct_shape_mismatch(tmp_path, secret):
    split(secret, tmp_path / "a")
    other = tmp_path / "other.pgm"
    write_gray_image(GrayImage.from_rows([[1, 2]]), other)
    split(other, tmp_path / "b")
    rc = main(["reconstruct", str(tmp_path / "a/share1.vss3"), str(tmp_path / "b/share2.vss3"),
               "--out", str(tmp_path / "o.pgm")])
    assert rc == EXIT_SHAPE


def test_reconstruct_unrelated_same_shape_is_allowed(tmp_path, secret):
    split(secret, tmp_path / "a", 1)
    other = tmp_path / "other.pgm"
    write_gray_image(GrayImage(np.arange(9, dtype=np.uint8).reshape(3, 3)), other)
    split(other, tmp_path / "b", 2)
    out = tmp_path / "o.pgm"
    rc = main(["reconstruct", str(tmp_path / "a/share1.vss3"), str(tmp_path / "b/share2.vss3"), "--out", str(out)])
    assert rc == 0
    assert read_gray_image(out).width == 3


def test_reconstruct_corrupt_and_unsupported(tmp_path, secret):
    split(secret, tmp_path)
    s1, s2 = tmp_path / "share1.vss3", tmp_path / "share2.vss3"
    data = s2.read_bytes()
    bad = tmp_path / "bad.vss3"
    bad.write_bytes(b"XSS3" + data[4:])
    assert main(["reconstruct", str(s1), str(bad), "--out", str(tmp_path / "o.pgm")]) == EXIT_CONTAINER
    bad.write_bytes(data[:5] + b"\x07" + data[6:])
    assert main(["reconstruct", str(s1), str(bad), "--out", str(tmp_path / "o.pgm")]) == EXIT_UNSUPPORTED
    bad.write_bytes(data[:-1])
    assert main(["reconstruct", str(s1), str(bad), "--out", str(tmp_path / "o.pgm")]) == EXIT_CONTAINER


def test_inspect(tmp_path, random_image, capsys):
    secret = tmp_path / "r.pgm"
    write_gray_image(random_image(0), secret)
    split(secret, tmp_path)
    capsys.readouterr()
    assert main(["inspect", str(tmp_path / "share3.vss3"), "--out-dir", str(tmp_path / "bm")]) == 0
    out = capsys.readouterr().out
    for line in ("share_index: 3", "width: 64", "height: 64", "scheme_id: 1", "dist: uniform3"):
        assert line in out
    for half in "AB":
        assert (tmp_path / "bm" / f"share3_{half}.pbm").read_bytes().startswith(b"P4\n512 64\n")


def test_inspect_truncated(tmp_path, secret, capsys):
    split(secret, tmp_path)
    p = tmp_path / "share1.vss3"
    p.write_bytes(p.read_bytes()[:-3])
    assert main(["inspect", str(p)]) == EXIT_CONTAINER
    assert "payload" in capsys.readouterr().err


def test_analyze_file_mode(tmp_path, secret, capsys):
    split(secret, tmp_path)
    capsys.readouterr()
    shares = [str(tmp_path / f"share{i}.vss3") for i in (3, 1, 2)]
    assert main(["analyze", "--secret", str(secret), "--shares", *shares, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert all(p["mismatched_pixels"] == 0 for p in doc["exactness"]["pairs"].values())
    assert doc["expansion"]["aggregate_ratio"] == 6
    assert main(["analyze", "--secret", str(secret), "--shares", *shares]) == 0
    assert "exactness.exact: true" in capsys.readouterr().out


def test_analyze_file_mode_duplicate(tmp_path, secret):
    split(secret, tmp_path)
    s = str(tmp_path / "share1.vss3")
    assert main(["analyze", "--secret", str(secret), "--shares", s, s, str(tmp_path / "share2.vss3")]) == EXIT_DUPLICATE


@pytest.mark.parametrize("dist, p1", [("uniform3", 2 / 3), ("balanced2", 0.5)])
def test_analyze_montecarlo(capsys, dist, p1):
    assert main(["analyze", "--montecarlo", "200000", "--dist", dist, "--seed", "1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)["leakage"]
    assert doc["dist"] == dist
    for slot in doc["slots"]:
        assert abs(slot["p1_given_b1"] - p1) < 0.01
        assert slot["p1_given_b0"] == 0


def test_analyze_modes_exclusive(secret):
    assert main(["analyze", "--montecarlo", "10", "--secret", str(secret)]) == EXIT_USAGE


def test_module_entry_point(tmp_path, secret):
    proc = subprocess.run([sys.executable, "-m", "grayvss", "split", str(secret), "--out-dir", str(tmp_path),
                           "--seed", "9"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "grayvss", "inspect", str(tmp_path / "nope.vss3")],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_INPUT
