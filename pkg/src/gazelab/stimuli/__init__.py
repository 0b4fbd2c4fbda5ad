"""Procedural stimulus generators.

Every generator is a pure function of its spec and the rng stream passed
in; replaying the stream reproduces the stimulus exactly.
"""

from .landolt import LandoltSpec, ORIENTATIONS, gen_landolt_c
from .glass import GlassSpec, GlassPatch, gen_glass_pair, render_glass_patch
from .motion import MotionFieldSpec, MotionFieldState, init_motion_field, step_motion_field, render_motion_field
from .search import SEARCH_MODES, SearchArray, SearchItem, gen_search_array
from .change import ChangeObject, ChangeArrays, gen_change_arrays, render_change_array, CHANGE_PALETTE
from .mot import MOTSpec, MOTState, init_mot, step_mot, render_mot
from .procedural import gen_procedural_image

__all__ = [
    "LandoltSpec", "ORIENTATIONS", "gen_landolt_c",
    "GlassSpec", "GlassPatch", "gen_glass_pair", "render_glass_patch",
    "MotionFieldSpec", "MotionFieldState", "init_motion_field", "step_motion_field",
    "render_motion_field",
    "SEARCH_MODES", "SearchArray", "SearchItem", "gen_search_array",
    "ChangeObject", "ChangeArrays", "gen_change_arrays", "render_change_array",
    "CHANGE_PALETTE",
    "MOTSpec", "MOTState", "init_mot", "step_mot", "render_mot",
    "gen_procedural_image",
]
