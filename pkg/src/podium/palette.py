"""Shared color and label constants.

The level palette must be identical wherever levels are drawn (factor strip,
level-probability curves, similarity scatter) so that a level reads the same
across views.
"""

EMOTIONS = ("angry", "disgust", "fear", "happy", "sad", "surprise", "neutral")

EMOTION_COLORS = {
    "angry": "#d62728",
    "disgust": "#8c564b",
    "fear": "#9467bd",
    "happy": "#ffbf00",
    "sad": "#1f77b4",
    "surprise": "#ff7f0e",
    "neutral": "#a0a0a0",
}

# Light to dark with contest level 1..5.
LEVEL_COLORS = {
    1: "#c6dbef",
    2: "#9ecae1",
    3: "#6baed6",
    4: "#3182bd",
    5: "#08519c",
}

LEVEL_NAMES = {
    1: "area",
    2: "division",
    3: "district",
    4: "semi-final",
    5: "final",
}
