"""Pointing task built directly on the widget kit, no task class needed.

Each trial: fixate the center cross, then a letter-E target appears at one
of two side positions (optionally next to a lure worth a smaller reward);
looking at a widget long enough commits it. Shows how far the kit gets
you in a few dozen lines. Run:

    python scripts/point_to_target_demo.py [--target-size 0.18] [--lure-size 0]
"""

import argparse

import numpy as np

from gazelab.geometry import GazeState, MonitorGeometry, apply_action, gaze_to_screen_point
from gazelab.policies import GazeController
from gazelab.rendering import Renderer
from gazelab.stimuli.draw import fixation_cross_image, glyph_image
from gazelab.widgets import Widget, WidgetKit


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--target-size", type=float, default=0.18)
    parser.add_argument("--lure-size", type=float, default=0.0, help="0 disables the lure")
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    geom = MonitorGeometry()
    kit = WidgetKit(geom.screen_width, geom.screen_height, background=(127, 127, 127))
    renderer = Renderer(geom, 84, 84)
    rng = np.random.default_rng(args.seed)
    controller = GazeController(max_rate=2.5)
    gaze = GazeState()
    state = {"phase": "fixate", "aim": (0.5, 0.5), "score": 0.0, "trial": 0}

    def start_trial(_widget=None, _hover=None):
        kit.remove_widget("cross")
        side = "left" if rng.integers(2) == 0 else "right"
        x = 0.2 if side == "left" else 0.8
        half = args.target_size / 2
        kit.add_widget(Widget(
            "target", glyph_image("E", 48, (235, 235, 235)),
            (x - half, 0.5 - half), (args.target_size, args.target_size),
            on_hover=lambda w, t: t >= 20 and finish(2.0),
        ))
        if args.lure_size > 0:
            lx, lhalf = (0.8 if side == "left" else 0.2), args.lure_size / 2
            kit.add_widget(Widget(
                "lure", glyph_image("E", 48, (160, 160, 160)),
                (lx - lhalf, 0.5 - lhalf), (args.lure_size, args.lure_size),
                on_hover=lambda w, t: t >= 20 and finish(1.0),
            ))
        state["phase"] = "point"
        state["aim"] = (x, 0.5)  # this demo agent always points at the target

    def finish(reward):
        kit.add_reward(reward)
        for name in ("target", "lure"):
            if kit.has_widget(name):
                kit.remove_widget(name)
        state["trial"] += 1
        show_cross()

    def show_cross():
        kit.add_widget(Widget(
            "cross", fixation_cross_image(48), (0.465, 0.465), (0.07, 0.07),
            on_hover=lambda w, t: t >= 30 and start_trial(),
        ))
        state["phase"] = "fixate"
        state["aim"] = (0.5, 0.5)

    show_cross()
    for step in range(5000):
        fx, fy = state["aim"]
        target_angles = (
            np.degrees(np.arctan2((fx - 0.5) * geom.monitor_width, geom.distance)),
            np.degrees(np.arctan2((fy - 0.5) * geom.monitor_height, geom.distance)),
        )
        gaze = apply_action(gaze, controller.toward((gaze.yaw, gaze.pitch), target_angles))
        kit.dispatch_tick(gaze_to_screen_point(gaze, geom))
        renderer.render(kit, gaze)  # the observation a subject would see
        state["score"] += kit.drain_reward()
        if state["trial"] >= args.trials:
            print(f"{args.trials} trials in {step + 1} steps, return {state['score']:.0f}")
            return
    print("ran out of steps")


if __name__ == "__main__":
    main()
