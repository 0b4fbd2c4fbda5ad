import numpy as np
import pytest
from PIL import Image

from gazelab.datasets import DirectoryImages, ProceduralImages, load_image_dataset, make_image_source
from gazelab.errors import DatasetError


def save(path, size, color):
    Image.fromarray(np.full((size, size, 3), color, dtype=np.uint8)).save(path)


class TestDirectoryImages:
    def test_loads_sorted_by_filename(self, tmp_path):
        save(tmp_path / "b.png", 16, 20)
        save(tmp_path / "a.png", 16, 10)
        save(tmp_path / "c.png", 16, 30)
        dataset = load_image_dataset(str(tmp_path))
        assert dataset.size == 3
        assert dataset.names == ["a.png", "b.png", "c.png"]
        assert dataset.get(0)[0, 0, 0] == 10
        assert dataset.get(2)[0, 0, 0] == 30

    def test_mixed_dimensions_rejected(self, tmp_path):
        save(tmp_path / "a.png", 16, 10)
        save(tmp_path / "b.png", 17, 20)
        with pytest.raises(DatasetError, match="b.png"):
            load_image_dataset(str(tmp_path))

    def test_absent_directory_rejected(self, tmp_path):
        with pytest.raises(DatasetError):
            load_image_dataset(str(tmp_path / "nope"))

    def test_empty_directory_rejected(self, tmp_path):
        with pytest.raises(DatasetError):
            load_image_dataset(str(tmp_path))


class TestSourceSelection:
    def test_default_is_procedural(self):
        source = make_image_source(None)
        assert isinstance(source, ProceduralImages)
        assert source.size is None

    def test_directory_overrides_procedural(self, tmp_path):
        save(tmp_path / "only.png", 16, 42)
        source = make_image_source(str(tmp_path))
        assert isinstance(source, DirectoryImages)
        assert source.get(0)[0, 0, 0] == 42

    def test_recognition_task_draws_from_configured_dataset(self, tmp_path):
        from conftest import fast_config, run_trials
        from gazelab import Environment
        from gazelab.policies import OraclePolicy

        for i in range(2):
            save(tmp_path / f"img{i}.png", 24, 40 + i)
        env = Environment(
            fast_config("continuous_recognition", image_dataset_dir=str(tmp_path))
        )
        records = run_trials(env, OraclePolicy(env), 12, seed=2)
        ids = {r.stimulus_descriptor["imageId"] for r in records}
        assert ids <= {0, 1}  # never exceeds the two dataset images
        # once both images are out, every further trial is truthfully "old"
        later = [r.stimulus_descriptor["isOld"] for r in records[4:]]
        assert all(later)
