import numpy as np
import pytest

from gazelab.geometry import GazeState, MonitorGeometry, gaze_for_screen_fraction
from gazelab.rendering import Renderer
from gazelab.widgets import Widget, WidgetKit


def make_scene(background=(90, 90, 90), screen=128):
    geom = MonitorGeometry(screen_width=screen, screen_height=screen)
    kit = WidgetKit(screen, screen, background=background)
    kit.set_offscreen_color((10, 20, 30))
    renderer = Renderer(geom, 84, 84)
    return geom, kit, renderer


def shift_between(frame_a, frame_b, max_shift=12):
    """Horizontal displacement of b's content relative to a (negative = left)."""
    a = frame_a.astype(np.int32).mean(axis=2)
    b = frame_b.astype(np.int32).mean(axis=2)
    best, best_dx = None, 0
    for dx in range(-max_shift, max_shift + 1):
        if dx >= 0:
            diff = a[:, dx:] - b[:, : a.shape[1] - dx]
        else:
            diff = a[:, :dx] - b[:, -dx:]
        score = float(np.mean(np.abs(diff)))
        if best is None or score < best:
            best, best_dx = score, dx
    # best alignment b[x] ~ a[x + best_dx] means content moved by -best_dx
    return -best_dx


class TestRenderObservation:
    def test_uniform_screen_gives_uniform_center(self):
        _, kit, renderer = make_scene(background=(77, 77, 77))
        obs = renderer.render(kit, GazeState(0, 0))
        # central region looks only at the monitor
        assert np.all(obs[20:64, 20:64] == 77)

    def test_world_background_outside_monitor(self):
        _, kit, renderer = make_scene()
        obs = renderer.render(kit, GazeState(0, 0))
        assert tuple(obs[0, 0]) == (10, 20, 30)  # corner ray misses the monitor

    def test_center_texel_maps_to_center_pixel(self):
        _, kit, renderer = make_scene()
        kit.screen[63:65, 63:65] = (255, 0, 255)
        kit.version += 1
        obs = renderer.render(kit, GazeState(0, 0))
        assert tuple(obs[42, 42]) == (255, 0, 255)

    def test_gaze_right_shifts_content_left(self):
        _, kit, renderer = make_scene()
        rng = np.random.default_rng(0)
        kit.screen[:] = rng.integers(0, 256, size=kit.screen.shape)
        frame_a = renderer.render(kit, GazeState(0, 0))
        frame_b = renderer.render(kit, GazeState(3.0, 0))
        assert shift_between(frame_a, frame_b) < -2

    def test_gaze_up_shifts_content_down(self):
        _, kit, renderer = make_scene()
        rng = np.random.default_rng(0)
        kit.screen[:] = rng.integers(0, 256, size=kit.screen.shape)
        a = renderer.render(kit, GazeState(0, 0)).astype(np.int32)
        b = renderer.render(kit, GazeState(0, 3.0)).astype(np.int32)
        down = np.mean(np.abs(a[:-4] - b[4:]))
        up = np.mean(np.abs(a[4:] - b[:-4]))
        assert down < up  # content moved toward the bottom of the frame

    def test_render_locality_single_texel(self):
        geom, kit, renderer = make_scene()
        gaze = GazeState(4.0, -3.0)
        flat = renderer.flat_source(gaze).reshape(84, 84)
        # flip a texel some ray actually samples (nearest sampling skips texels)
        target_flat = int(flat[40, 40])
        before = renderer.render(kit, gaze)
        kit.screen[target_flat // geom.screen_width, target_flat % geom.screen_width] = (1, 255, 1)
        after = renderer.render(kit, gaze)
        changed = np.argwhere(np.any(before != after, axis=2))
        assert len(changed) > 0
        for y, x in changed:
            assert flat[y, x] == target_flat

    def test_deterministic(self):
        _, kit, renderer = make_scene()
        kit.screen[10:50, 10:50] = (200, 100, 50)
        a = renderer.render(kit, GazeState(7, 7))
        b = renderer.render(kit, GazeState(7, 7))
        assert np.array_equal(a, b)
        assert a.flags["C_CONTIGUOUS"]

    def test_widget_visible_where_placed(self):
        geom, kit, renderer = make_scene()
        img = np.zeros((8, 8, 4), dtype=np.uint8)
        img[:, :, 0] = 250
        img[:, :, 3] = 255
        kit.add_widget(Widget("spot", img, (0.7, 0.45), (0.1, 0.1)))
        gaze = gaze_for_screen_fraction(0.75, 0.5, geom)
        obs = renderer.render(kit, gaze)
        assert obs[42, 42, 0] == 250  # looking straight at it

    def test_bilinear_smoke(self):
        geom = MonitorGeometry(screen_width=128, screen_height=128)
        kit = WidgetKit(128, 128, background=(100, 100, 100))
        kit.set_offscreen_color((0, 0, 0))
        renderer = Renderer(geom, 84, 84, bilinear=True)
        obs = renderer.render(kit, GazeState(0, 0))
        assert obs.shape == (84, 84, 3)
        assert np.all(obs[30:50, 30:50] == 100)
        tilted = renderer.render(kit, GazeState(9, 4))
        assert tilted.shape == (84, 84, 3)
