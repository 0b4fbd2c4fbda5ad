import pytest

from gazelab.errors import InputError
from gazelab.triallog import (
    TrialLogWriter,
    TrialRecord,
    append_trial_record,
    read_trial_log,
    record_to_line,
)


def sample_record(i=0):
    return TrialRecord(
        episode_id="ep0000",
        trial_index=i,
        task_name="glass",
        trial_case_kind="advance",
        difficulty_levels=[3],
        stimulus_descriptor={"coherence": 0.7, "targetSide": "left", "timedOut": False},
        response_label="left",
        correct=True,
        reaction_steps=27,
        reward=1.0,
        start_step=100,
        end_step=141,
        seed=99,
    )


class TestRoundTrip:
    def test_write_then_read_equal(self, tmp_path):
        path = tmp_path / "log.ndjson"
        with TrialLogWriter(str(path)) as writer:
            writer.append(sample_record())
        records = read_trial_log(str(path))
        assert records == [sample_record()]

    def test_many_records_one_line_each(self, tmp_path):
        path = tmp_path / "log.ndjson"
        with TrialLogWriter(str(path)) as writer:
            for i in range(10000):
                writer.append(sample_record(i))
        assert sum(1 for _ in open(path)) == 10000
        records = read_trial_log(str(path))
        assert len(records) == 10000
        assert records[137].trial_index == 137

    def test_append_only_across_writers(self, tmp_path):
        path = tmp_path / "log.ndjson"
        with TrialLogWriter(str(path)) as writer:
            writer.append(sample_record(0))
        with TrialLogWriter(str(path)) as writer:
            writer.append(sample_record(1))
        assert [r.trial_index for r in read_trial_log(str(path))] == [0, 1]

    def test_malformed_line_names_line_number(self, tmp_path):
        path = tmp_path / "log.ndjson"
        path.write_text(record_to_line(sample_record()) + "\n{oops\n")
        with pytest.raises(InputError, match=":2:"):
            read_trial_log(str(path))

    def test_missing_field_rejected(self, tmp_path):
        path = tmp_path / "log.ndjson"
        path.write_text('{"schemaVersion": 1}\n')
        with pytest.raises(InputError, match=":1:"):
            read_trial_log(str(path))

    def test_schema_version_present_on_wire(self):
        line = record_to_line(sample_record())
        assert '"schemaVersion":1' in line

    def test_append_via_module_function(self, tmp_path):
        path = tmp_path / "log.ndjson"
        with open(path, "w") as fh:
            append_trial_record(fh, sample_record())
        assert read_trial_log(str(path)) == [sample_record()]
