from __future__ import annotations

import pytest

from conftest import pen_events
from cosketch.model import (
    ActionEvent,
    Actor,
    EngineConfig,
    EventKind,
    Session,
    derive_strokes,
    derive_turns,
    validate_event_stream,
)


def _ev(t, kind, actor=Actor.USER, **payload):
    return ActionEvent(t, actor, kind, payload)


class TestValidate:
    def test_well_formed_pairing_is_ok(self):
        events = [
            _ev(0, EventKind.PEN_DOWN, x=0, y=0),
            _ev(10, EventKind.PEN_MOVE, x=1, y=1),
            _ev(20, EventKind.PEN_UP, x=2, y=2),
        ]
        assert validate_event_stream(events) == []

    def test_orphan_pen_move(self):
        violations = validate_event_stream([_ev(5, EventKind.PEN_MOVE, x=0, y=0)])
        assert len(violations) == 1
        assert "orphan pen_move" in violations[0].message

    def test_non_monotone_timestamps(self):
        events = [_ev(10, EventKind.PEN_DOWN, x=0, y=0), _ev(5, EventKind.PEN_DOWN, x=0, y=0)]
        messages = [v.message for v in validate_event_stream(events)]
        assert any("non-monotone" in m for m in messages)

    def test_unmatched_pen_down_reported(self):
        violations = validate_event_stream([_ev(0, EventKind.PEN_DOWN, x=0, y=0)])
        assert any("unmatched pen_down" in v.message for v in violations)

    def test_violations_carry_event_index(self):
        events = [
            _ev(0, EventKind.PEN_DOWN, x=0, y=0),
            _ev(10, EventKind.PEN_UP),
            _ev(15, EventKind.PEN_MOVE, x=1, y=1),
        ]
        violations = validate_event_stream(events)
        assert violations[0].index == 2


class TestDeriveStrokes:
    def test_points_and_times(self):
        events = pen_events([(0, 0), (5, 0), (10, 0)], t0=100, span_ms=200)
        strokes = derive_strokes(events)
        assert len(strokes) == 1
        assert strokes[0].t_start == 100 and strokes[0].t_end == 300
        assert [(p.x, p.y) for p in strokes[0].points] == [(0, 0), (5, 0), (10, 0)]

    def test_per_actor_separation(self):
        events = sorted(
            pen_events([(0, 0), (1, 1)], t0=0, span_ms=100)
            + pen_events([(50, 50), (60, 60)], t0=50, span_ms=100, actor=Actor.AGENT),
            key=lambda e: e.t,
        )
        strokes = derive_strokes(events)
        assert {s.actor for s in strokes} == {Actor.USER, Actor.AGENT}

    def test_stroke_count_matches_pen_pairs(self):
        events = []
        t = 0
        for _ in range(5):
            events.extend(pen_events([(0, 0), (1, 0)], t0=t, span_ms=100))
            t += 4000
        assert len(derive_strokes(events)) == 5


class TestDeriveTurns:
    def _two_strokes(self, gap_ms: int) -> list[ActionEvent]:
        first = pen_events([(0, 0), (10, 0)], t0=9000, span_ms=1000)  # pen_up at 10000
        second = pen_events([(20, 0), (30, 0)], t0=10000 + gap_ms, span_ms=500)
        return first + second

    def test_gap_below_threshold_merges(self, config):
        turns = derive_turns(self._two_strokes(2000), config)
        assert len(turns) == 1
        assert len(turns[0].strokes) == 2

    def test_gap_above_threshold_splits(self, config):
        turns = derive_turns(self._two_strokes(3500), config)
        assert len(turns) == 2

    def test_gap_boundary_is_inclusive(self, config):
        turns = derive_turns(self._two_strokes(3000), config)
        assert len(turns) == 2

    def test_intervening_other_actor_content_closes_turn(self, config):
        events = pen_events([(0, 0), (10, 0)], t0=0, span_ms=500)
        events += pen_events([(100, 100), (110, 100)], t0=700, span_ms=300, actor=Actor.AGENT)
        events += pen_events([(20, 0), (30, 0)], t0=1500, span_ms=500)
        events.sort(key=lambda e: e.t)
        turns = derive_turns(events, config)
        user_turns = [t for t in turns if t.actor is Actor.USER]
        assert len(user_turns) == 2

    def test_request_fulfilment_flagged_not_counting(self, config):
        events = [
            _ev(0, EventKind.AGENT_STROKE_BEGIN, actor=Actor.AGENT, purpose="request"),
        ]
        events += pen_events([(0, 0), (5, 5)], t0=10, span_ms=100, actor=Actor.AGENT)
        events.append(_ev(200, EventKind.AGENT_STROKE_END, actor=Actor.AGENT))
        turns = derive_turns(events, config)
        assert len(turns) == 1
        assert turns[0].counts_as_turn is False

    def test_regular_agent_emission_counts(self, config):
        events = [
            _ev(
                0,
                EventKind.AGENT_STROKE_BEGIN,
                actor=Actor.AGENT,
                purpose="turn",
                algorithm="mimic",
            ),
        ]
        events += pen_events([(0, 0), (5, 5)], t0=10, span_ms=100, actor=Actor.AGENT)
        events.append(_ev(200, EventKind.AGENT_STROKE_END, actor=Actor.AGENT))
        turns = derive_turns(events, config)
        assert turns[0].counts_as_turn is True
        assert turns[0].source_algorithm == "mimic"

    def test_turn_ordering_and_indices(self, config):
        events = pen_events([(0, 0), (1, 0)], t0=0, span_ms=100)
        events += pen_events([(0, 0), (1, 0)], t0=5000, span_ms=100)
        turns = derive_turns(events, config)
        assert [t.index for t in turns] == [0, 1]
        assert turns[0].t_start <= turns[1].t_start

    def test_determinism(self, config):
        events = self._two_strokes(2500)
        a = derive_turns(events, config)
        b = derive_turns(events, config)
        assert a == b


class TestEngineConfig:
    def test_defaults_match_contract(self):
        cfg = EngineConfig()
        assert cfg.tick_ms == 500
        assert cfg.turn_gap_ms == 3000
        assert cfg.recognition_confidence_threshold == pytest.approx(0.30)
        assert cfg.frechet_similarity_fraction == pytest.approx(0.2)
        assert cfg.macd_fast == 12 and cfg.macd_slow == 26 and cfg.macd_signal == 9

    def test_fast_must_be_below_slow(self):
        with pytest.raises(ValueError):
            EngineConfig(macd_fast=26, macd_slow=12)

    def test_positivity(self):
        with pytest.raises(ValueError):
            EngineConfig(tick_ms=0)

    def test_round_trip(self):
        cfg = EngineConfig(turn_gap_ms=1200)
        assert EngineConfig.from_dict(cfg.to_dict()) == cfg


def test_session_duration_is_last_event_t():
    session = Session(id="s", events=[_ev(0, EventKind.PANEL_TOGGLE), _ev(450, EventKind.PANEL_TOGGLE)])
    assert session.duration_ms == 450
