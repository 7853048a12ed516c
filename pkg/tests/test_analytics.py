from __future__ import annotations

import math
import random

import pytest
import scipy.stats

from conftest import make_stroke, pen_events
from cosketch.analytics import (
    RhythmKind,
    collaboration_dynamics,
    compare_groups,
    detect_couplings,
    regularized_incomplete_beta,
    session_metrics,
    t_two_sided_p,
    turn_rhythm,
    welch_t,
)
from cosketch.coding import code_timeline
from cosketch.model import (
    ActionEvent,
    Actor,
    EngineConfig,
    EventKind,
    Session,
    Turn,
    derive_turns,
)
from oracles import welch_reference


def _ev(t, kind, actor=Actor.USER, **payload):
    return ActionEvent(t, actor, kind, payload)


def _turn(index, actor, coords, t_start, t_end, counts=True, algorithm=None):
    stroke = make_stroke(coords, actor=actor, t_start=t_start, t_end=t_end)
    return Turn(
        actor=actor,
        index=index,
        strokes=(stroke,),
        t_start=t_start,
        t_end=t_end,
        counts_as_turn=counts,
        source_algorithm=algorithm,
    )


class TestWelch:
    def test_identical_groups(self):
        t, df, p = welch_t([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert t == 0.0
        assert p == pytest.approx(1.0)

    def test_reference_example(self):
        t, df, p = welch_t([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
        assert t == pytest.approx(-3.674234614174767, abs=1e-9)
        assert df == pytest.approx(4.0, abs=1e-9)
        assert p == pytest.approx(0.021311641128756727, abs=1e-9)
        assert p == pytest.approx(0.0213, abs=5e-5)

    def test_swap_negates_t_keeps_p(self):
        a = [3.1, 4.5, 2.2, 5.0]
        b = [7.7, 6.1, 8.9]
        t_ab, _, p_ab = welch_t(a, b)
        t_ba, _, p_ba = welch_t(b, a)
        assert t_ab == pytest.approx(-t_ba, abs=1e-12)
        assert p_ab == pytest.approx(p_ba, abs=1e-12)

    def test_needs_two_samples(self):
        with pytest.raises(ValueError):
            welch_t([1.0], [2.0, 3.0])

    def test_constant_equal_groups(self):
        t, _, p = welch_t([2.0, 2.0], [2.0, 2.0, 2.0])
        assert (t, p) == (0.0, 1.0)

    def test_constant_unequal_groups_degenerate(self):
        t, _, p = welch_t([2.0, 2.0], [3.0, 3.0])
        assert math.isinf(t) and p == 0.0

    def test_matches_reference_on_100_random_cases(self):
        rng = random.Random(1234)
        for _ in range(100):
            a = [rng.gauss(rng.uniform(-2, 2), rng.uniform(0.5, 3)) for _ in range(rng.randint(3, 20))]
            b = [rng.gauss(rng.uniform(-2, 2), rng.uniform(0.5, 3)) for _ in range(rng.randint(3, 20))]
            t, df, p = welch_t(a, b)
            t_ref, df_ref, p_ref = welch_reference(a, b)
            assert t == pytest.approx(t_ref, abs=1e-6)
            assert df == pytest.approx(df_ref, abs=1e-6)
            assert p == pytest.approx(p_ref, abs=1e-6)

    def test_t_cdf_matches_scipy(self):
        for t_val in (-4.0, -1.3, 0.0, 0.7, 2.5, 6.0):
            for df in (1.0, 2.5, 4.0, 17.3, 120.0):
                want = 2.0 * scipy.stats.t.sf(abs(t_val), df)
                assert t_two_sided_p(t_val, df) == pytest.approx(want, abs=1e-10)

    def test_incomplete_beta_matches_scipy(self):
        import scipy.special as sp

        for a in (0.5, 1.0, 2.5, 8.0):
            for b in (0.5, 1.5, 4.0):
                for x in (0.0, 0.01, 0.3, 0.62, 0.99, 1.0):
                    assert regularized_incomplete_beta(a, b, x) == pytest.approx(
                        sp.betainc(a, b, x), abs=1e-12
                    )


class TestCouplings:
    def test_reactive_chain(self, config):
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 10)], 0, 1000),
            _turn(1, Actor.AGENT, [(12, 12), (20, 20)], 4000, 5000, algorithm="mimic"),
            _turn(2, Actor.USER, [(22, 22), (30, 30)], 8000, 9000),
        ]
        couplings = detect_couplings(turns, config)
        assert len(couplings) == 1
        c = couplings[0]
        assert c.depth == 3
        assert c.initiator is Actor.USER
        assert c.member_turn_indices == (0, 1, 2)
        assert c.duration_ms == 9000

    def test_distant_turns_do_not_couple(self, config):
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 10)], 0, 1000),
            _turn(1, Actor.AGENT, [(900, 700), (950, 750)], 4000, 5000, algorithm="style"),
        ]
        assert detect_couplings(turns, config) == []

    def test_proximity_couples_without_algorithm(self, config):
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 10)], 0, 1000),
            _turn(1, Actor.AGENT, [(30, 30), (60, 60)], 4000, 5000, algorithm="style"),
        ]
        couplings = detect_couplings(turns, config)
        assert len(couplings) == 1  # min distance 10*sqrt(2)*2 < 50 px

    def test_same_actor_breaks_chain(self, config):
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 10)], 0, 1000),
            _turn(1, Actor.AGENT, [(11, 11), (20, 20)], 4000, 5000, algorithm="extend"),
            _turn(2, Actor.AGENT, [(21, 21), (30, 30)], 9000, 10000, algorithm="extend"),
        ]
        couplings = detect_couplings(turns, config)
        assert len(couplings) == 1
        assert couplings[0].depth == 2
        assert couplings[0].decoupler is Actor.AGENT

    def test_non_counting_turns_excluded(self, config):
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 10)], 0, 1000),
            _turn(1, Actor.AGENT, [(11, 11), (20, 20)], 4000, 5000, counts=False, algorithm="request_sketch"),
        ]
        assert detect_couplings(turns, config) == []

    def test_scripted_alternating_chain_matches_enumeration(self, config):
        # near, near, far, near: expect one depth-3 coupling then a fresh pair
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 0)], 0, 500),
            _turn(1, Actor.AGENT, [(15, 0), (25, 0)], 4000, 4500, algorithm="style"),
            _turn(2, Actor.USER, [(30, 0), (40, 0)], 8000, 8500),
            _turn(3, Actor.AGENT, [(800, 600), (900, 700)], 12000, 12500, algorithm="style"),
            _turn(4, Actor.USER, [(820, 620), (840, 640)], 16000, 16500),
        ]
        couplings = detect_couplings(turns, config)
        assert [c.depth for c in couplings] == [3, 2]
        assert couplings[0].decoupler is Actor.AGENT
        assert couplings[1].initiator is Actor.AGENT
        assert couplings[1].decoupler is Actor.USER


class TestCollaboration:
    def test_isolated_turn_accepted(self, config):
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 10)], 0, 1000),
            _turn(1, Actor.AGENT, [(12, 12), (20, 20)], 4000, 5000, algorithm="mimic"),
        ]
        events = [_ev(5000, EventKind.PANEL_TOGGLE)]
        counts = collaboration_dynamics(turns, detect_couplings(turns, config), events, config)
        assert counts.new_ideas[Actor.USER] == 1
        assert counts.accepted[Actor.USER] == 1
        assert counts.rejected[Actor.USER] == 0

    def test_agent_downvote_rejection(self, config):
        turns = [
            _turn(0, Actor.USER, [(0, 0), (10, 10)], 0, 1000),
            _turn(1, Actor.AGENT, [(500, 500), (520, 520)], 4000, 5000, algorithm="style"),
        ]
        events = [_ev(5500, EventKind.VOTE_DOWN)]
        counts = collaboration_dynamics(turns, detect_couplings(turns, config), events, config)
        assert counts.rejected[Actor.AGENT] == 1
        assert counts.accepted[Actor.AGENT] == 0

    def test_depth_four_coupling_gives_two_elaborations(self, config):
        coords = [[(i * 10, 0), (i * 10 + 8, 0)] for i in range(4)]
        turns = [
            _turn(i, Actor.USER if i % 2 == 0 else Actor.AGENT, coords[i], i * 4000, i * 4000 + 500,
                  algorithm=None if i % 2 == 0 else "extend")
            for i in range(4)
        ]
        couplings = detect_couplings(turns, config)
        assert [c.depth for c in couplings] == [4]
        counts = collaboration_dynamics(turns, couplings, [], config)
        assert sum(counts.elaborations.values()) == 2

    def test_objects_requested(self, config):
        events = [
            _ev(0, EventKind.REQUEST_SKETCH, label="tree"),
            _ev(1000, EventKind.REQUEST_IMAGE, prompt="a river"),
            _ev(2000, EventKind.VOTE_UP),
        ]
        counts = collaboration_dynamics([], [], events, config)
        assert counts.objects_requested == 2

    def test_accepted_plus_rejected_bounded(self, config):
        rng = random.Random(8)
        turns = []
        for i in range(12):
            actor = Actor.USER if i % 2 == 0 else Actor.AGENT
            x = rng.uniform(0, 1000)
            y = rng.uniform(0, 700)
            turns.append(
                _turn(i, actor, [(x, y), (x + 20, y + 10)], i * 4000, i * 4000 + 900,
                      algorithm=None if actor is Actor.USER else rng.choice(["mimic", "style"]))
            )
        events = [_ev(rng.randrange(48000), rng.choice([EventKind.VOTE_DOWN, EventKind.VOTE_UP])) for _ in range(6)]
        events.sort(key=lambda e: e.t)
        counts = collaboration_dynamics(turns, detect_couplings(turns, config), events, config)
        for actor in Actor:
            assert counts.accepted[actor] + counts.rejected[actor] <= counts.new_ideas[actor]


class TestTurnRhythm:
    def _session(self, events):
        return Session(id="r", events=sorted(events, key=lambda e: e.t))

    def test_user_idle_during_agent_stroke_is_wait(self, config):
        events = pen_events([(0, 0), (10, 0)], t0=0, span_ms=500)
        events.append(_ev(4000, EventKind.AGENT_STROKE_BEGIN, actor=Actor.AGENT, purpose="turn"))
        events += pen_events([(20, 0), (30, 0)], t0=4100, span_ms=1800, actor=Actor.AGENT)
        events.append(_ev(6000, EventKind.AGENT_STROKE_END, actor=Actor.AGENT))
        session = self._session(events)
        windows = turn_rhythm(session, session.turns())
        agent_window = windows[1]
        kinds = {seg.kind for seg in agent_window.segments}
        assert RhythmKind.WAIT in kinds

    def test_idle_with_idle_agent_is_pause(self, config):
        events = pen_events([(0, 0), (10, 0)], t0=0, span_ms=500)
        events.append(_ev(6000, EventKind.PANEL_TOGGLE))
        session = self._session(events)
        windows = turn_rhythm(session, session.turns())
        assert any(seg.kind is RhythmKind.PAUSE for seg in windows[0].segments)

    def test_vote_right_after_agent_turn_is_regulate(self, config):
        events = pen_events([(0, 0), (10, 0)], t0=0, span_ms=500)
        events.append(_ev(4000, EventKind.AGENT_STROKE_BEGIN, actor=Actor.AGENT, purpose="turn"))
        events += pen_events([(20, 0), (30, 0)], t0=4100, span_ms=900, actor=Actor.AGENT)
        events.append(_ev(5100, EventKind.AGENT_STROKE_END, actor=Actor.AGENT))
        events.append(_ev(5600, EventKind.VOTE_UP))
        events.append(_ev(9000, EventKind.PANEL_TOGGLE))
        session = self._session(events)
        windows = turn_rhythm(session, session.turns())
        agent_window = windows[-1]
        assert any(seg.kind is RhythmKind.REGULATE for seg in agent_window.segments)

    def test_segments_tile_each_window(self, config):
        events = pen_events([(0, 0), (40, 0), (80, 40)], t0=0, span_ms=2300)
        events += pen_events([(10, 50), (60, 50)], t0=7000, span_ms=1200)
        events.append(_ev(12000, EventKind.VOTE_UP))
        session = self._session(events)
        windows = turn_rhythm(session, session.turns())
        for w in windows:
            assert sum(s.duration_ms for s in w.segments) == w.t_end - w.t_start


class TestSessionMetrics:
    def test_line_totals(self, config):
        events = pen_events([(0, 0), (3, 4)], t0=0, span_ms=400)
        events += pen_events([(10, 10), (13, 14)], t0=5000, span_ms=400)
        events += pen_events([(20, 20), (26, 28)], t0=10000, span_ms=400)
        session = Session(id="m", events=sorted(events, key=lambda e: e.t))
        turns = session.turns()
        user = code_timeline(session.events, turns, config, Actor.USER)
        agent = code_timeline(session.events, turns, config, Actor.AGENT)
        table = session_metrics(session, user, agent)
        assert table.user.total_lines == 3
        assert table.user.total_line_length == pytest.approx(20.0)
        assert table.user.turn_count == 3

    def test_request_content_excluded_from_turn_count(self, config):
        events = [_ev(0, EventKind.REQUEST_SKETCH, label="tree")]
        events.append(_ev(500, EventKind.AGENT_STROKE_BEGIN, actor=Actor.AGENT, purpose="request"))
        events += pen_events([(0, 0), (50, 50)], t0=600, span_ms=300, actor=Actor.AGENT)
        events.append(_ev(1000, EventKind.AGENT_STROKE_END, actor=Actor.AGENT))
        session = Session(id="m", events=sorted(events, key=lambda e: e.t))
        turns = session.turns()
        table = session_metrics(
            session,
            code_timeline(session.events, turns, config, Actor.USER),
            code_timeline(session.events, turns, config, Actor.AGENT),
        )
        assert table.agent.turn_count == 0
        assert table.agent.total_lines == 1  # content still visible to domain analysis

    def test_mean_code_all_execute(self, config):
        events = pen_events([(0, 0), (200, 0)], t0=0, span_ms=10_000)
        session = Session(id="m", events=events)
        turns = session.turns()
        table = session_metrics(
            session,
            code_timeline(session.events, turns, config, Actor.USER),
            code_timeline(session.events, turns, config, Actor.AGENT),
        )
        assert table.user.mean_code == pytest.approx(-1.0)

    def test_mode_counts_partition(self, config):
        events = pen_events([(0, 0), (50, 50)], t0=0, span_ms=3000)
        events.append(_ev(4000, EventKind.VOTE_UP))
        session = Session(id="m", events=events)
        turns = session.turns()
        user = code_timeline(session.events, turns, config, Actor.USER)
        table = session_metrics(session, user, code_timeline(session.events, turns, config, Actor.AGENT))
        total = (
            table.user.communicate_count
            + table.user.manipulate_count
            + table.user.wait_count
            + table.user.execute_count
        )
        assert total == len(user.values)


class TestCompareGroups:
    def _table(self, value: float, config):
        events = pen_events([(0, 0), (value, 0)], t0=0, span_ms=int(1000 + value))
        session = Session(id=f"v{value}", events=events)
        turns = session.turns()
        return session_metrics(
            session,
            code_timeline(session.events, turns, config, Actor.USER),
            code_timeline(session.events, turns, config, Actor.AGENT),
        )

    def test_identical_groups_no_flags(self, config):
        group = [self._table(100.0, config), self._table(100.0, config)]
        comparison = compare_groups(group, list(group), alpha=0.05)
        assert not any(m.significant for m in comparison.metrics.values())

    def test_alpha_one_flags_every_metric_with_sub_unit_p(self, config):
        # flag rule is strictly p < alpha, so at alpha=1 everything except
        # degenerate p == 1 metrics (identical constant groups) is flagged
        group_a = [self._table(100.0, config), self._table(140.0, config)]
        group_b = [self._table(900.0, config), self._table(700.0, config)]
        comparison = compare_groups(group_a, group_b, alpha=1.0)
        assert comparison.metrics
        for m in comparison.metrics.values():
            assert m.significant == (m.p < 1.0)
        assert comparison.metrics["user_total_line_length"].significant

    def test_undefined_metrics_excluded_with_notice(self, config):
        # agent-only chatter leaves the user series all-wait: zero-variance
        # curve, undefined r-squared
        events = [
            _ev(0, EventKind.AGENT_SPEECH, actor=Actor.AGENT, text="hi"),
            _ev(2000, EventKind.AGENT_SPEECH, actor=Actor.AGENT, text="still here"),
        ]
        session = Session(id="quiet", events=events)
        turns = session.turns()
        quiet = session_metrics(
            session,
            code_timeline(session.events, turns, config, Actor.USER),
            code_timeline(session.events, turns, config, Actor.AGENT),
        )
        group = [quiet, quiet]
        comparison = compare_groups(group, list(group))
        assert "user_r_squared" in comparison.excluded
        assert "undefined" in comparison.excluded["user_r_squared"]
        assert "user_r_squared" not in comparison.metrics

    def test_empty_group_rejected(self, config):
        group = [self._table(100.0, config), self._table(120.0, config)]
        with pytest.raises(ValueError):
            compare_groups(group, [])
