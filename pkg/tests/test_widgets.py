import numpy as np
import pytest

from gazelab.errors import InputError
from gazelab.geometry import ScreenPoint
from gazelab.widgets import Widget, WidgetKit


def solid(color=(200, 10, 10), size=8, alpha=255):
    img = np.zeros((size, size, 4), dtype=np.uint8)
    img[:, :, :3] = color
    img[:, :, 3] = alpha
    return img


def kit_64():
    return WidgetKit(64, 64, background=(127, 127, 127))


def center_point(kit, widget):
    fx, fy = widget.center
    return ScreenPoint(fx * kit.width, (1 - fy) * kit.height)


class TestAddRemove:
    def test_full_screen_widget_covers_everything(self):
        kit = kit_64()
        kit.add_widget(Widget("bg", solid((1, 2, 3)), (0.0, 0.0), (1.0, 1.0)))
        assert np.all(kit.screen == (1, 2, 3))

    def test_duplicate_name_rejected(self):
        kit = kit_64()
        kit.add_widget(Widget("a", solid(), (0.1, 0.1), (0.2, 0.2)))
        with pytest.raises(InputError):
            kit.add_widget(Widget("a", solid(), (0.5, 0.5), (0.2, 0.2)))

    def test_out_of_bounds_rejected(self):
        kit = kit_64()
        with pytest.raises(InputError):
            kit.add_widget(Widget("a", solid(), (0.9, 0.9), (0.2, 0.2)))

    def test_remove_unknown_rejected(self):
        with pytest.raises(InputError):
            kit_64().remove_widget("ghost")

    def test_remove_restores_background_and_frees_name(self):
        kit = kit_64()
        kit.add_widget(Widget("a", solid((9, 9, 9)), (0.25, 0.25), (0.5, 0.5)))
        kit.remove_widget("a")
        assert np.all(kit.screen == 127)
        kit.add_widget(Widget("a", solid(), (0.1, 0.1), (0.2, 0.2)))  # name reusable

    def test_removing_hovered_widget_fires_exit(self):
        kit = kit_64()
        fired = []
        widget = Widget(
            "a", solid(), (0.4, 0.4), (0.2, 0.2), on_exit=lambda w: fired.append(w.name)
        )
        kit.add_widget(widget)
        kit.dispatch_tick(center_point(kit, widget))
        assert kit.current_widget_name == "a"
        kit.remove_widget("a")
        assert fired == ["a"]
        assert kit.current_widget_name is None

    def test_composite_matches_scratch_recomposite(self, rng):
        kit = kit_64()
        names = []
        for i in range(12):
            pos = tuple(rng.uniform(0.0, 0.7, size=2))
            size = tuple(rng.uniform(0.05, 0.3, size=2))
            color = tuple(int(c) for c in rng.integers(0, 255, size=3))
            alpha = 255 if rng.integers(2) else 90
            name = f"w{i}"
            kit.add_widget(Widget(name, solid(color, alpha=alpha), pos, size))
            names.append(name)
        for name in names[::3]:
            kit.remove_widget(name)
        snapshot = kit.screen.copy()
        kit.recomposite()
        assert np.array_equal(kit.screen, snapshot)


class TestDispatch:
    def test_enter_fires_on_central_hit(self):
        kit = kit_64()
        seen = []
        widget = Widget(
            "cross", solid(), (0.45, 0.45), (0.1, 0.1), on_enter=lambda w: seen.append("enter")
        )
        kit.add_widget(widget)
        events = kit.dispatch_tick(ScreenPoint(32.0, 32.0))
        assert seen == ["enter"]
        assert ("enter", "cross", None) in events

    def test_exclusivity_two_widgets(self):
        kit = kit_64()
        hits = []
        a = Widget("a", solid(), (0.0, 0.4), (0.2, 0.2), on_hover=lambda w, t: hits.append("a"))
        b = Widget("b", solid(), (0.8, 0.4), (0.2, 0.2), on_hover=lambda w, t: hits.append("b"))
        kit.add_widget(a)
        kit.add_widget(b)
        kit.dispatch_tick(center_point(kit, a))
        assert hits == ["a"]

    def test_exit_then_enter_order_on_jump(self):
        kit = kit_64()
        order = []
        a = Widget("a", solid(), (0.0, 0.4), (0.2, 0.2),
                   on_exit=lambda w: order.append("exit-a"))
        b = Widget("b", solid(), (0.8, 0.4), (0.2, 0.2),
                   on_enter=lambda w: order.append("enter-b"))
        kit.add_widget(a)
        kit.add_widget(b)
        kit.dispatch_tick(center_point(kit, a))
        kit.dispatch_tick(center_point(kit, b))
        assert order == ["exit-a", "enter-b"]

    def test_off_monitor_fires_exit(self):
        kit = kit_64()
        order = []
        a = Widget("a", solid(), (0.4, 0.4), (0.2, 0.2), on_exit=lambda w: order.append("exit"))
        kit.add_widget(a)
        kit.dispatch_tick(center_point(kit, a))
        kit.dispatch_tick(None)
        assert order == ["exit"]
        assert kit.current_widget_name is None

    def test_hover_time_accumulates_and_resets(self):
        kit = kit_64()
        times = []
        a = Widget("a", solid(), (0.4, 0.4), (0.2, 0.2), on_hover=lambda w, t: times.append(t))
        kit.add_widget(a)
        pt = center_point(kit, a)
        for _ in range(4):
            kit.dispatch_tick(pt)
        kit.dispatch_tick(None)
        for _ in range(2):
            kit.dispatch_tick(pt)
        assert times == [0, 1, 2, 3, 0, 1]

    def test_last_added_wins_on_overlap(self):
        kit = kit_64()
        hits = []
        kit.add_widget(Widget("lower", solid(), (0.3, 0.3), (0.4, 0.4),
                              on_hover=lambda w, t: hits.append("lower")))
        kit.add_widget(Widget("upper", solid((0, 0, 255)), (0.3, 0.3), (0.4, 0.4),
                              on_hover=lambda w, t: hits.append("upper")))
        kit.dispatch_tick(ScreenPoint(32.0, 32.0))
        assert hits == ["upper"]

    def test_enter_exit_strictly_alternate(self, rng):
        kit = kit_64()
        log = []
        kit.add_widget(Widget("a", solid(), (0.3, 0.3), (0.4, 0.4),
                              on_enter=lambda w: log.append("enter"),
                              on_exit=lambda w: log.append("exit")))
        for _ in range(300):
            if rng.integers(2):
                point = ScreenPoint(float(rng.uniform(0, 64)), float(rng.uniform(0, 64)))
            else:
                point = None
            kit.dispatch_tick(point)
        for first, second in zip(log, log[1:]):
            assert first != second

    def test_no_callback_after_removal(self):
        kit = kit_64()
        hits = []
        a = Widget("a", solid(), (0.4, 0.4), (0.2, 0.2), on_hover=lambda w, t: hits.append(1))
        kit.add_widget(a)
        pt = center_point(kit, a)
        kit.dispatch_tick(pt)
        kit.remove_widget("a")
        for _ in range(5):
            kit.dispatch_tick(pt)
        assert hits == [1]

    def test_mutation_during_callback_applies_at_tick_end(self):
        kit = kit_64()

        def on_enter(_w):
            kit.remove_widget("a")
            kit.add_widget(Widget("b", solid(), (0.0, 0.0), (0.1, 0.1)))

        kit.add_widget(Widget("a", solid(), (0.4, 0.4), (0.2, 0.2), on_enter=on_enter))
        kit.dispatch_tick(ScreenPoint(32.0, 32.0))
        assert not kit.has_widget("a")
        assert kit.has_widget("b")


class TestTimers:
    def test_timeout_counting_contract(self):
        kit = kit_64()
        fired_at = []
        tick = [0]
        kit.add_timer("t", 3, lambda: fired_at.append(tick[0]))
        for _ in range(6):
            tick[0] += 1
            kit.dispatch_tick(None)
        assert fired_at == [3]

    def test_timer_fires_exactly_once_then_removed(self):
        kit = kit_64()
        count = []
        kit.add_timer("t", 1, lambda: count.append(1))
        for _ in range(5):
            kit.dispatch_tick(None)
        assert count == [1]
        kit.add_timer("t", 1, lambda: count.append(2))  # name freed after firing
        kit.dispatch_tick(None)
        assert count == [1, 2]

    def test_timer_added_in_callback_counts_from_next_tick(self):
        kit = kit_64()
        fired_at = []
        tick = [0]

        def chain():
            kit.add_timer("t2", 2, lambda: fired_at.append(tick[0]))

        kit.add_timer("t1", 1, chain)
        for _ in range(6):
            tick[0] += 1
            kit.dispatch_tick(None)
        assert fired_at == [3]  # fired at 1, chained timer expires two ticks later

    def test_timers_fire_after_gaze_events(self):
        kit = kit_64()
        order = []
        a = Widget("a", solid(), (0.4, 0.4), (0.2, 0.2),
                   on_enter=lambda w: order.append("enter"))
        kit.add_widget(a)
        kit.add_timer("t", 1, lambda: order.append("timer"))
        kit.dispatch_tick(center_point(kit, a))
        assert order == ["enter", "timer"]


class TestReward:
    def test_single_reward(self):
        kit = kit_64()
        kit.add_reward(1.0)
        assert kit.drain_reward() == 1.0
        assert kit.drain_reward() == 0.0

    def test_rewards_accumulate_within_step(self):
        kit = kit_64()
        kit.add_reward(1.0)
        kit.add_reward(1.0)
        assert kit.drain_reward() == 2.0

    def test_non_finite_rejected(self):
        with pytest.raises(InputError):
            kit_64().add_reward(float("nan"))
