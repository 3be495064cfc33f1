import pytest

from rachsim.cli import main

TINY_TOML = """
[deployment]
num_devices = 300

[rach]
t_slots = 10
k_preambles = 4
max_frames = 20

[experiment]
replications = 2
dp_values = [0.0, 10.0]
dp_num_devices = 300
load_values = [50.0, 300.0]
"""


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "tiny.toml"
    path.write_text(TINY_TOML)
    return path


def test_validate_config_echoes_resolved_values(tiny_config, capsys):
    assert main(["validate-config", "--config", str(tiny_config)]) == 0
    out = capsys.readouterr().out
    assert "deployment.num_devices=300" in out
    assert "rach.decoder=rsra-sic" in out
    assert "channel.f_mhz=1500.0" in out


def test_seed_override_flag(tiny_config, tmp_path, capsys):
    out_dir = tmp_path / "out"
    code = main(
        ["simulate", "--config", str(tiny_config), "--seed", "7", "--out-dir", str(out_dir), "-q"]
    )
    assert code == 0
    assert "seed=7" in capsys.readouterr().out
    assert (out_dir / "frames.csv").is_file()
    assert "seed=7" in (out_dir / "manifest.txt").read_text()


def test_out_of_range_override_exits_2(tiny_config, capsys):
    code = main(
        ["sweep-dp", "--config", str(tiny_config), "--override", "rach.p_bar=1.5"]
    )
    assert code == 2
    assert "p_bar" in capsys.readouterr().err


def test_unknown_override_key_named(tiny_config, capsys):
    code = main(
        ["simulate", "--config", str(tiny_config), "--override", "rach.nope=1"]
    )
    assert code == 2
    assert "rach.nope" in capsys.readouterr().err


def test_missing_config_file_exits_2(capsys):
    assert main(["simulate", "--config", "/nonexistent.toml"]) == 2
    assert "not found" in capsys.readouterr().err


def test_unknown_command_exits_2(tiny_config):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_per_slot_smoke(tiny_config, tmp_path, capsys):
    out_dir = tmp_path / "ps"
    code = main(["per-slot", "--config", str(tiny_config), "--out-dir", str(out_dir), "-q"])
    assert code == 0
    csv_text = (out_dir / "per_slot.csv").read_text()
    header, *rows = csv_text.splitlines()
    assert header == "replication,seed,frame,slot,contending,singleton_successes,sic_successes,failed"
    assert rows


def test_sweep_commands_write_csvs(tiny_config, tmp_path):
    for command, name in (("sweep-dp", "dp_sweep.csv"), ("sweep-load", "load_sweep.csv")):
        out_dir = tmp_path / command
        assert main([command, "--config", str(tiny_config), "--out-dir", str(out_dir), "-q"]) == 0
        assert (out_dir / name).is_file()
        assert (out_dir / "manifest.txt").is_file()


def test_unwritable_out_dir_exits_1(tiny_config, tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    code = main(
        ["simulate", "--config", str(tiny_config), "--out-dir", str(blocker / "sub"), "-q"]
    )
    assert code == 1


def test_repeated_invocations_byte_identical(tiny_config, tmp_path):
    dirs = [tmp_path / "r1", tmp_path / "r2"]
    for d in dirs:
        assert main(["per-slot", "--config", str(tiny_config), "--out-dir", str(d), "-q"]) == 0
    assert (dirs[0] / "per_slot.csv").read_bytes() == (dirs[1] / "per_slot.csv").read_bytes()
    assert (dirs[0] / "manifest.txt").read_bytes() == (dirs[1] / "manifest.txt").read_bytes()
