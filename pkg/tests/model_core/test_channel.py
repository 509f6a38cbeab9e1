import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.exceptions import ConfigurationError
from model_core.channel import ChannelKind, GapChannel, channel_positive_prob


@pytest.mark.parametrize(
    ("kind", "k", "expected"),
    [
        ("bernoulli", 2, 0.0),
        ("bernoulli", 3, 0.5),
        ("bernoulli", 5, 1.0),
        ("linear", 4, 2 / 3),
        ("linear", 5, 1.0),
        ("linear", 0, 0.0),
    ],
)
def test_positive_prob_examples(kind, k, expected):
    assert channel_positive_prob(GapChannel(kind=kind), k, 2, 5) == pytest.approx(expected)


def test_exact_probabilities_are_fractions():
    assert GapChannel(kind="linear").positive_prob(4, 2, 5, exact=True) == Fraction(2, 3)
    assert GapChannel().positive_prob(3, 2, 5, exact=True) == Fraction(1, 2)


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        GapChannel().positive_prob(-1, 2, 5)


@given(
    kind=st.sampled_from([ChannelKind.BERNOULLI, ChannelKind.LINEAR]),
    l=st.integers(min_value=0, max_value=20),
    width=st.integers(min_value=1, max_value=20),
)
def test_channel_is_monotone_with_fixed_endpoints(kind, l, width):
    u = l + width
    channel = GapChannel(kind=kind)
    probs = [channel.positive_prob(k, l, u) for k in range(u + 3)]
    assert all(p == 0.0 for p in probs[: l + 1])
    assert all(p == 1.0 for p in probs[u:])
    assert all(a <= b for a, b in zip(probs, probs[1:]))


class TestCustomChannel:
    def test_valid_table(self):
        channel = GapChannel(kind="custom", custom_table={3: 0.2, 4: 0.7})
        assert channel_positive_prob(channel, 4, 2, 5) == 0.7
        assert channel_positive_prob(channel, 6, 2, 5) == 1.0

    def test_table_required(self):
        with pytest.raises(ConfigurationError):
            GapChannel(kind="custom")

    def test_builtin_kind_refuses_table(self):
        with pytest.raises(ConfigurationError):
            GapChannel(kind="bernoulli", custom_table={3: 0.5})

    @pytest.mark.parametrize(
        ("table", "match"),
        [
            ({3: 0.7, 4: 0.2}, "not monotone"),
            ({3: 0.2}, "missing"),
            ({2: 0.1, 3: 0.2, 4: 0.7}, "must have probability 0"),
            ({3: 0.2, 4: 0.7, 5: 0.9}, "must have probability 1"),
            ({3: 1.5, 4: 1.7}, "outside"),
        ],
    )
    def test_invalid_tables(self, table, match):
        channel = GapChannel(kind="custom", custom_table=table)
        with pytest.raises(ConfigurationError, match=match):
            channel_positive_prob(channel, 3, 2, 5)

    def test_from_file(self, tmp_path):
        path = tmp_path / "table.json"
        path.write_text(json.dumps({"3": 0.25, "4": 0.75}))
        channel = GapChannel.from_file(path)
        assert channel.kind is ChannelKind.CUSTOM
        assert channel.to_dict() == {"kind": "custom", "table": {"3": 0.25, "4": 0.75}}

    def test_from_file_errors(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            GapChannel.from_file(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{")
        with pytest.raises(ConfigurationError, match="not valid JSON"):
            GapChannel.from_file(broken)
        listed = tmp_path / "list.json"
        listed.write_text("[0.5]")
        with pytest.raises(ConfigurationError, match="JSON object"):
            GapChannel.from_file(listed)


def test_probability_vector_is_lookup_table():
    vector = GapChannel(kind="linear").probability_vector(6, 2, 5)
    assert vector.tolist() == pytest.approx([0, 0, 0, 1 / 3, 2 / 3, 1, 1])
