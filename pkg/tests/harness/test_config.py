import json

import pytest

from core.exceptions import ConfigurationError, InvalidInstanceError
from harness.config import MAX_SEED, ExperimentConfig, read_defectives
from model_core.channel import ChannelKind
from probmath.params import Algorithm
from tests.factories import ExperimentConfigFactory


class TestValidation:
    def test_defaults(self, tmp_path):
        config = ExperimentConfigFactory(output=tmp_path)
        assert config.model is ChannelKind.BERNOULLI
        assert config.algorithm is Algorithm.NONADAPTIVE
        assert config.epsilons.eps2 == 0.1

    def test_invalid_instance_names_constraint(self, tmp_path):
        with pytest.raises(InvalidInstanceError) as excinfo:
            ExperimentConfigFactory(output=tmp_path, u=5)
        assert excinfo.value.constraint == "u <= d"

    def test_full_defective_set_rejected(self, tmp_path):
        with pytest.raises(InvalidInstanceError):
            ExperimentConfigFactory(output=tmp_path, n=4, d=4)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"eps2": 0.1, "R": 5},
            {"eps3": 0.1, "I": 5, "R": None},
            {"eps4": 0.1, "I": 5, "R": None},
            {"eps3": 0.1, "algorithm": "ada", "I": None, "I1": 5},
        ],
    )
    def test_budget_and_override_are_exclusive(self, tmp_path, overrides):
        with pytest.raises(ConfigurationError, match="mutually exclusive"):
            ExperimentConfigFactory(output=tmp_path, **overrides)

    def test_budget_for_other_parameter_is_allowed(self, tmp_path):
        config = ExperimentConfigFactory(output=tmp_path, eps2=0.05, R=None)
        assert config.params().I == 60

    @pytest.mark.parametrize(
        "overrides",
        [{"trials": -1}, {"seed": MAX_SEED + 1}, {"seed": -1}, {"workers": 0}, {"max_failure_rate": 1.5}],
    )
    def test_rejects_out_of_range_values(self, tmp_path, overrides):
        with pytest.raises(ConfigurationError):
            ExperimentConfigFactory(output=tmp_path, **overrides)

    def test_custom_model_needs_table(self, tmp_path):
        with pytest.raises(ConfigurationError, match="needs --table"):
            ExperimentConfigFactory(output=tmp_path, model="custom")

    def test_table_only_for_custom_model(self, tmp_path):
        table = tmp_path / "table.json"
        table.write_text(json.dumps({"2": 0.5}))
        with pytest.raises(ConfigurationError, match="only applies"):
            ExperimentConfigFactory(output=tmp_path, table=table)

    def test_missing_files(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            ExperimentConfigFactory(output=tmp_path, model="custom", table=tmp_path / "missing.json")
        with pytest.raises(ConfigurationError, match="not found"):
            ExperimentConfigFactory(output=tmp_path, defectives=tmp_path / "missing.txt")

    def test_custom_channel_is_validated(self, tmp_path):
        table = tmp_path / "table.json"
        table.write_text(json.dumps({"2": 0.5}))
        config = ExperimentConfigFactory(output=tmp_path, model="custom", table=table)
        assert config.channel().positive_prob(2, 1, 3) == 0.5

        table.write_text(json.dumps({"1": 0.5}))
        with pytest.raises(ConfigurationError):
            ExperimentConfigFactory(output=tmp_path, model="custom", table=table)

    def test_non_monotone_table_rejected_on_construction(self, tmp_path):
        table = tmp_path / "table.json"
        table.write_text(json.dumps({"2": 0.7, "3": 0.4}))
        with pytest.raises(ConfigurationError, match="not monotone at k=3"):
            ExperimentConfigFactory(output=tmp_path, n=100, d=10, l=1, u=4, model="custom", table=table)


def test_to_dict_leaves_out_location_and_workers(tmp_path):
    config = ExperimentConfigFactory(output=tmp_path, workers=3, seed=5)
    echo = config.to_dict()
    assert "output" not in echo and "workers" not in echo
    assert echo["seed"] == 5
    assert echo["model"] == "bernoulli"


class TestDefectives:
    def test_json_list(self, tmp_path):
        path = tmp_path / "d.json"
        path.write_text("[3, 1, 2]")
        assert read_defectives(path) == [3, 1, 2]

    def test_separated_integers(self, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("3, 1\n2 7\n")
        assert read_defectives(path) == [3, 1, 2, 7]

    @pytest.mark.parametrize("content", ["1 1 2", "1 x 2", "[1, 2.5]", "[1,"])
    def test_invalid_content(self, tmp_path, content):
        path = tmp_path / "d.txt"
        path.write_text(content)
        with pytest.raises(ConfigurationError):
            read_defectives(path)

    def test_fixed_population(self, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("0 9 17 33")
        config = ExperimentConfigFactory(output=tmp_path, defectives=path)
        assert config.fixed_population().defectives == frozenset({0, 9, 17, 33})
        assert ExperimentConfigFactory(output=tmp_path).fixed_population() is None

    def test_wrong_count(self, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("0 9")
        with pytest.raises(InvalidInstanceError):
            ExperimentConfigFactory(output=tmp_path, defectives=path).fixed_population()


def test_direct_construction_coerces_types(tmp_path):
    config = ExperimentConfig(n=40, d=4, l=1, u=3, model="linear", algorithm="lin", output=str(tmp_path))
    assert config.model is ChannelKind.LINEAR
    assert config.algorithm is Algorithm.LINEAR
    assert config.output == tmp_path
