import json

from qfraud.util.events import EventLogger, EventType, new_run_id, read_events
from qfraud.util.jsonl import append_jsonl, read_jsonl


class TestJsonl:
    def test_append_then_read(self, tmp_path):
        """Appended records read back in order, creating parent directories."""
        path = tmp_path / "nested" / "log.jsonl"
        assert append_jsonl(path, {"a": 1})
        assert append_jsonl(path, {"b": [1, 2]})
        assert list(read_jsonl(path)) == [{"a": 1}, {"b": [1, 2]}]

    def test_malformed_lines_skipped(self, tmp_path):
        """Malformed and blank lines are skipped when reading."""
        path = tmp_path / "log.jsonl"
        path.write_text('{"ok": 1}\nnot json\n\n{"ok": 2}\n')
        assert [r["ok"] for r in read_jsonl(path)] == [1, 2]


class TestEventLogger:
    def test_steps_increase_and_run_id_stamped(self, tmp_path):
        """Each event gets the next step id and the run id."""
        run_id = new_run_id()
        events = EventLogger(run_id, tmp_path / "events.jsonl")
        events.log(EventType.RUN_STARTED, {"config": {}})
        events.log(EventType.EPOCH_FINISHED, {"epoch": 1})

        lines = [json.loads(line) for line in (tmp_path / "events.jsonl").read_text().splitlines()]
        assert [e["step_id"] for e in lines] == [1, 2]
        assert {e["run_id"] for e in lines} == {run_id}
        assert lines[1]["event_type"] == "epoch_finished"
        assert lines[1]["payload"] == {"epoch": 1}

    def test_run_ids_are_ulids(self):
        """Run ids are distinct 26-character ULIDs."""
        a, b = new_run_id(), new_run_id()
        assert len(a) == 26
        assert a != b

    def test_read_events_parses_models(self, tmp_path):
        """read_events returns typed events."""
        events = EventLogger(new_run_id(), tmp_path / "events.jsonl")
        events.log(EventType.CHECKPOINT_SAVED, {"epoch": 3, "val_loss": 0.25})
        (event,) = read_events(tmp_path / "events.jsonl")
        assert event.event_type is EventType.CHECKPOINT_SAVED
        assert event.payload["val_loss"] == 0.25
