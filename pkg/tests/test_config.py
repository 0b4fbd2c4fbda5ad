import pytest

from gazelab.config import EnvConfig, config_from_mapping, load_config, parse_fovea
from gazelab.errors import ConfigError


def write(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    return str(path)


class TestLoadConfig:
    def test_empty_file_yields_defaults(self, tmp_path):
        cfg = load_config(write(tmp_path, ""))
        assert cfg == EnvConfig()
        assert cfg.episode_length_steps == 10800
        assert cfg.task == "landolt"

    def test_episode_length_honored(self, tmp_path):
        cfg = load_config(write(tmp_path, "episodeLengthSteps: 10800\n"))
        assert cfg.episode_length_steps == 10800
        cfg = load_config(write(tmp_path, "episodeLengthSteps: 123\n"))
        assert cfg.episode_length_steps == 123

    def test_negative_episode_length_rejected_naming_key(self, tmp_path):
        with pytest.raises(ConfigError, match="episodeLengthSteps"):
            load_config(write(tmp_path, "episodeLengthSteps: -5\n"))

    def test_unknown_key_rejected_by_name(self, tmp_path):
        with pytest.raises(ConfigError, match="episodeLenght"):
            load_config(write(tmp_path, "episodeLenght: 100\n"))

    def test_type_mismatch_rejected_by_name(self, tmp_path):
        with pytest.raises(ConfigError, match="seed"):
            load_config(write(tmp_path, "seed: banana\n"))
        with pytest.raises(ConfigError, match="privilegedInfo"):
            load_config(write(tmp_path, "privilegedInfo: 3\n"))

    def test_full_file_round_trip(self, tmp_path):
        cfg = load_config(
            write(
                tmp_path,
                "task: glass\n"
                "seed: 11\n"
                "privilegedInfo: true\n"
                "screenBackground: [100, 100, 100]\n"
                "fovea: '168:84'\n"
                "taskParams:\n"
                "  polarity: mixed\n",
            )
        )
        assert cfg.task == "glass"
        assert cfg.seed == 11
        assert cfg.privileged_info is True
        assert cfg.screen_background == (100, 100, 100)
        assert cfg.fovea == (168, 84)
        assert cfg.task_params == {"polarity": "mixed"}

    def test_non_mapping_top_level_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write(tmp_path, "- 1\n- 2\n"))


class TestValidation:
    def test_aspect_invariant(self):
        with pytest.raises(ConfigError):
            config_from_mapping({"monitorWidth": 2.0})

    def test_fov_bounds(self):
        with pytest.raises(ConfigError, match="fov"):
            config_from_mapping({"fovDegrees": 5.0})

    def test_bad_reward_scheme(self):
        with pytest.raises(ConfigError, match="rewardScheme"):
            config_from_mapping({"rewardScheme": "candy"})

    def test_bad_background(self):
        with pytest.raises(ConfigError, match="screenBackground"):
            config_from_mapping({"screenBackground": [1, 2]})

    def test_fovea_constraints(self):
        with pytest.raises(ConfigError, match="fovea"):
            config_from_mapping({"fovea": "84:168"})


class TestParseFovea:
    def test_string_form(self):
        assert parse_fovea("168:84") == (168, 84)

    def test_list_form(self):
        assert parse_fovea([168, 84]) == (168, 84)

    def test_garbage_rejected(self):
        with pytest.raises(ConfigError):
            parse_fovea("168")
        with pytest.raises(ConfigError):
            parse_fovea("a:b")
        with pytest.raises(ConfigError):
            parse_fovea({"in": 168})
