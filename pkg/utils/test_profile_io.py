"""Profile text format tests."""
from __future__ import annotations

import pytest

from errors import ProfileError
from transform import Profile
from utils.profile_io import format_profile, load_profile, parse_profile_text


def test_parse_full_profile():
    text = """
    # two levels, forced S
    mode=test_scale
    max_depth=2
    short_length=8
    chunk_count = 3
    inner_m=none
    """
    profile = parse_profile_text(text)
    assert profile == Profile(max_depth=2, short_length=8, chunk_count=3)


def test_empty_text_gives_defaults():
    assert parse_profile_text("\n# nothing\n") == Profile()


def test_round_trip():
    profile = Profile(mode="paper_faithful", base_case_threshold=64, max_depth=3, inner_m=40, inner_a=3)
    assert parse_profile_text(format_profile(profile)) == profile


def test_hex_integers_accepted():
    assert parse_profile_text("short_length=0x10").short_length == 16


@pytest.mark.parametrize(
    "text",
    [
        "max_depth",
        "depth=2",
        "max_depth=two",
        "short_length=6",
        "mode=fast",
        "max_depth=1\nmax_depth=2",
    ],
)
def test_rejects_bad_profiles(text):
    with pytest.raises(ProfileError):
        parse_profile_text(text)


def test_load_profile(tmp_path):
    path = tmp_path / "profile.txt"
    path.write_text("max_depth=0\n", encoding="utf-8")
    assert load_profile(path) == Profile(max_depth=0)
    assert load_profile(None) == Profile()
    with pytest.raises(ProfileError):
        load_profile(tmp_path / "missing.txt")
