import dataclasses
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from podium.factors import FactorTable
from podium.layout import (
    EmotionAccumulator,
    ScriptParams,
    SpiralParams,
    accumulate_intervals,
    distribution_layout,
    factor_strip_layout,
    script_layout,
    spiral_layout,
    type_layout,
    winding_signs,
)
from podium.ordinal import fit_proportional_odds
from podium.palette import EMOTION_COLORS

from conftest import make_speech


def flat_acc(e_values, arousal=0.5, confidence=1.0):
    n = len(e_values)
    return EmotionAccumulator(
        interval_s=5.0,
        cumulative_valence=tuple(e_values),
        dominant_emotion=("happy",) * n,
        mean_arousal=(arousal,) * n,
        mean_confidence=(confidence,) * n,
    )


def brute_force_flips(e, threshold):
    """Independent re-scan of the sign-flip rule used by the spiral."""
    p = [1 if e[0] >= 0 else -1]
    flips = []
    for i in range(1, len(e)):
        if e[i] * e[i - 1] < 0 and abs(e[i] - e[i - 1]) > threshold:
            p.append(-p[-1])
            flips.append(i)
        else:
            p.append(p[-1])
    return flips


class TestAccumulateIntervals:
    def test_interval_sums(self):
        rec = make_speech(duration_s=10.0, fps=1.0, valence=(0.5,) * 10,
                          arousal=(0.6,) * 10, emotion=("happy",) * 10, confidence=(0.8,) * 10)
        acc = accumulate_intervals(rec)
        assert acc.cumulative_valence == pytest.approx((2.5, 2.5), abs=1e-12)

    def test_modal_label_tie_breaks_earlier(self):
        rec = make_speech(duration_s=3.0, fps=1.0, valence=(0.1, 0.1, 0.1),
                          arousal=(0.5,) * 3, emotion=("happy", "happy", "sad"), confidence=(1.0,) * 3)
        acc = accumulate_intervals(rec)
        assert acc.dominant_emotion == ("happy",)
        rec2 = make_speech(duration_s=4.0, fps=1.0, valence=(0.1,) * 4,
                           arousal=(0.5,) * 4, emotion=("sad", "happy", "happy", "sad"), confidence=(1.0,) * 4)
        assert accumulate_intervals(rec2).dominant_emotion == ("sad",)

    def test_interval_count_ceils(self):
        rec = make_speech(duration_s=12.0, fps=1.0, valence=(0.1,) * 12,
                          arousal=(0.5,) * 12, emotion=("happy",) * 12, confidence=(1.0,) * 12)
        assert len(accumulate_intervals(rec)) == 3

    def test_empty_interval_inherits_label(self):
        # 12 samples over 20 s at fps 1: samples cover only the first 12 s,
        # so interval 3 ([15, 20)) is empty
        rec = make_speech(duration_s=20.0, fps=1.0, valence=(0.1,) * 12,
                          arousal=(0.5,) * 12, emotion=("fear",) * 12, confidence=(1.0,) * 12)
        acc = accumulate_intervals(rec)
        assert len(acc) == 4
        assert acc.cumulative_valence[3] == 0.0
        assert acc.dominant_emotion[3] == "fear"


class TestSpiral:
    def test_constant_angular_step_without_flips(self):
        acc = flat_acc([1.0] * 8)
        layout = spiral_layout(acc, SpiralParams(delta_r=0.04, theta_0=0.0))
        for n, theta in enumerate(layout.thetas):
            assert theta == pytest.approx(0.08 * math.pi * n, abs=1e-9)
        assert layout.turn_points == ()

    def test_flip_requires_sign_change_and_magnitude(self):
        assert spiral_layout(flat_acc([5.0, -20.0])).turn_points == (1,)
        assert spiral_layout(flat_acc([5.0, -2.0])).turn_points == ()
        # sign change alone is not enough; magnitude alone is not enough
        assert spiral_layout(flat_acc([5.0, 25.0])).turn_points == ()

    def test_initial_direction_follows_first_interval(self):
        down = spiral_layout(flat_acc([-5.0, -6.0]))
        assert down.thetas[1] < 0
        up = spiral_layout(flat_acc([5.0, 6.0]))
        assert up.thetas[1] > 0

    def test_flips_match_brute_force_on_random_sequences(self):
        rng = np.random.default_rng(100)
        for _ in range(100):
            n = int(rng.integers(1, 40))
            e = rng.normal(0, 12, n).round(2)
            layout = spiral_layout(flat_acc(e))
            assert list(layout.turn_points) == brute_force_flips(list(e), 10.0)

    def test_angular_increment_magnitude_constant(self):
        rng = np.random.default_rng(200)
        e = rng.normal(0, 15, 60)
        params = SpiralParams(delta_r=0.04)
        layout = spiral_layout(flat_acc(e), params)
        steps = np.diff(layout.thetas)
        assert np.all(np.abs(np.abs(steps) - 2 * math.pi * 0.04) < 1e-9)

    def test_radii_strictly_increasing_and_one_circle_per_interval(self):
        e = list(np.random.default_rng(3).normal(0, 15, 25))
        layout = spiral_layout(flat_acc(e))
        assert len(layout.circles) == 25
        radii = [math.hypot(c.cx, c.cy) for c in layout.circles]
        assert all(radii[i] < radii[i + 1] for i in range(len(radii) - 1))

    def test_circle_radius_maps_arousal(self):
        params = SpiralParams()
        low = spiral_layout(flat_acc([1.0], arousal=0.0), params).circles[0]
        high = spiral_layout(flat_acc([1.0], arousal=1.0), params).circles[0]
        assert low.radius == pytest.approx(params.circle_r_min)
        assert high.radius == pytest.approx(params.circle_r_max)

    def test_opacity_is_mean_confidence(self):
        layout = spiral_layout(flat_acc([1.0], confidence=0.65))
        assert layout.circles[0].opacity == pytest.approx(0.65)

    @given(st.lists(st.floats(-30, 30, allow_nan=False), min_size=1, max_size=50))
    def test_flip_property(self, e):
        layout = spiral_layout(flat_acc(e))
        assert list(layout.turn_points) == brute_force_flips(e, 10.0)


class TestScript:
    def test_zero_pause_gives_base_gap(self):
        params = ScriptParams()
        rec = make_speech()
        layout = script_layout(rec, params)
        # words 'more' [5.5, 6.0] then 'words' at 6.2: pause 0.2
        # words 'words' [6.2, 6.8] then 'here' at 8.8: pause 2.0
        by_text = {r.text: r for r in layout.runs}
        assert by_text["hello"].gap_after == pytest.approx(params.base_gap + params.gap_per_pause_s * 2.0)

    def test_pause_clamped_at_cap(self):
        words = list(make_speech().words)
        words[1] = dataclasses.replace(words[1], start_s=7.5, end_s=8.0)  # pause 6.5 after 'hello'
        words = [words[0], words[1]]
        rec = make_speech(words=tuple(words))
        params = ScriptParams()
        layout = script_layout(rec, params)
        assert layout.runs[0].gap_after == pytest.approx(params.base_gap + params.gap_per_pause_s * 2.0)

    def test_contiguous_words_base_gap(self):
        words = (
            dataclasses.replace(make_speech().words[0], start_s=0.0, end_s=1.0),
            dataclasses.replace(make_speech().words[1], start_s=1.0, end_s=2.0),
        )
        rec = make_speech(words=words)
        params = ScriptParams()
        layout = script_layout(rec, params)
        assert layout.runs[0].gap_after == pytest.approx(params.base_gap)

    def test_max_arousal_maps_to_max_font(self):
        sentences = (dataclasses.replace(make_speech().sentences[0], text_arousal=1.0, vocal_arousal=0.3),)
        words = make_speech().words[:2]
        rec = make_speech(sentences=sentences, words=words)
        params = ScriptParams()
        layout = script_layout(rec, params)
        assert layout.runs[0].font_size == pytest.approx(params.font_max)
        assert layout.runs[0].shape_weight == pytest.approx(1.0)

    def test_positions_non_decreasing_within_line(self, seed7_corpus):
        layout = script_layout(seed7_corpus.records[0])
        by_line = {}
        for run in layout.runs:
            by_line.setdefault(run.y, []).append(run.x)
        for xs in by_line.values():
            assert all(xs[i] <= xs[i + 1] for i in range(len(xs) - 1))

    def test_tracking_non_negative_and_fonts_in_range(self, seed7_corpus):
        params = ScriptParams()
        for rec in seed7_corpus.records[:5]:
            layout = script_layout(rec, params)
            for run in layout.runs:
                assert run.tracking >= 0
                assert params.font_min <= run.font_size <= params.font_max

    def test_requires_words(self):
        rec = make_speech(words=())
        with pytest.raises(ValueError):
            script_layout(rec)


class TestType:
    def test_exactly_200_rectangles(self, seed7_corpus):
        for rec in seed7_corpus.records[:10]:
            layout = type_layout(rec)
            assert len(layout.rects) == 200
            assert len(layout.polyline) == 200

    def test_interleaved_counts_within_two(self):
        for t, fps in [(399, 1.0), (397, 2.0), (401, 1.0)]:
            labels = tuple("happy" if k % 2 == 0 else "sad" for k in range(t))
            rec = make_speech(duration_s=t / fps, fps=fps, valence=(0.0,) * t,
                              arousal=(0.5,) * t, emotion=labels, confidence=(1.0,) * t)
            counts = Counter(r.color for r in type_layout(rec).rects)
            happy_ratio = labels.count("happy") / t
            expected = 200 * happy_ratio
            assert abs(counts[EMOTION_COLORS["happy"]] - expected) <= 2

    def test_four_way_interleave(self):
        t = 399
        cycle = ("happy", "sad", "fear", "neutral")
        labels = tuple(cycle[k % 4] for k in range(t))
        rec = make_speech(duration_s=float(t), fps=1.0, valence=(0.0,) * t,
                          arousal=(0.5,) * t, emotion=labels, confidence=(1.0,) * t)
        counts = Counter(r.color for r in type_layout(rec).rects)
        for e in cycle:
            expected = 200 * labels.count(e) / t
            assert abs(counts[EMOTION_COLORS[e]] - expected) <= 2

    def test_constant_valence_centers_mid_axis(self):
        rec = make_speech(valence=(0.0,) * 10)
        layout = type_layout(rec)
        assert all(r.y_center == pytest.approx(layout.height / 2) for r in layout.rects)

    def test_height_maps_arousal_linearly(self):
        rec = make_speech(arousal=(1.0,) * 10)
        layout = type_layout(rec)
        assert all(r.height == pytest.approx(layout.height) for r in layout.rects)


class TestStrip:
    def make_table(self, values_by_level):
        ids, levels, vals = [], {}, []
        i = 0
        for level, values in values_by_level.items():
            for v in values:
                sid = f"s{i:02d}"
                ids.append(sid)
                levels[sid] = level
                vals.append([v])
                i += 1
        table = FactorTable(tuple(ids), ("f",), np.array(vals))
        return table, levels

    def test_odd_count_quartiles(self):
        table, levels = self.make_table({3: [1.0, 2.0, 3.0, 4.0, 5.0]})
        layout = factor_strip_layout(table, "f", levels)
        row = layout.rows[0]
        assert (row.x25, row.median_x, row.x75) == (2.0, 3.0, 4.0)

    def test_single_speech_collapses(self):
        table, levels = self.make_table({2: [7.0]})
        row = factor_strip_layout(table, "f", levels).rows[0]
        assert row.x25 == row.median_x == row.x75 == 7.0

    def test_even_count_interpolates(self):
        table, levels = self.make_table({1: [1.0, 2.0, 3.0, 4.0]})
        assert factor_strip_layout(table, "f", levels).rows[0].median_x == pytest.approx(2.5)

    def test_domain_covers_all_dots_and_quartiles_ordered(self, seed7_table, seed7_levels):
        layout = factor_strip_layout(seed7_table, "facial_arousal_average", seed7_levels)
        lo, hi = layout.x_domain
        for row in layout.rows:
            assert row.x25 <= row.median_x <= row.x75
            for _, v in row.dots:
                assert lo <= v <= hi

    def test_unknown_factor_rejected(self, seed7_table, seed7_levels):
        with pytest.raises(KeyError):
            factor_strip_layout(seed7_table, "nope", seed7_levels)


class TestDistribution:
    def test_columns_sum_to_one(self, seed7_table, seed7_levels):
        x = seed7_table.column("facial_arousal_average")
        fit = fit_proportional_odds(x, [seed7_levels[s] for s in seed7_table.speech_ids], "facial_arousal_average")
        layout = distribution_layout(fit, (float(x.min()), float(x.max())))
        assert len(layout.xs) == 101
        for i in range(101):
            assert sum(line[i] for line in layout.lines) == pytest.approx(1.0, abs=1e-9)

    def test_top_level_curve_non_decreasing_for_positive_beta(self, seed7_table, seed7_levels):
        x = seed7_table.column("facial_arousal_average")
        fit = fit_proportional_odds(x, [seed7_levels[s] for s in seed7_table.speech_ids], "f")
        assert fit.beta > 0
        layout = distribution_layout(fit, (float(x.min()), float(x.max())))
        top = layout.lines[4]
        assert all(top[i + 1] >= top[i] - 1e-12 for i in range(100))

    def test_beta_zero_gives_flat_lines(self):
        fit = fit_proportional_odds([-1.0, 1.0] * 5, [1, 1, 2, 2, 3, 3, 4, 4, 5, 5], "f")
        layout = distribution_layout(fit, (-1.0, 1.0))
        for line in layout.lines:
            assert max(line) - min(line) < 1e-9

    def test_degenerate_domain_rejected(self, seed7_table, seed7_levels):
        x = seed7_table.column("facial_arousal_average")
        fit = fit_proportional_odds(x, [seed7_levels[s] for s in seed7_table.speech_ids], "f")
        with pytest.raises(ValueError, match="domain"):
            distribution_layout(fit, (1.0, 1.0))
