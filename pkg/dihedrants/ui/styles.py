"""Shared styles for dihedrants"""

# Selenized Dark color scheme hex values
DIM_0 = "#72898f"    # dimmed text
FG_0 = "#adbcbc"     # main text
FG_1 = "#cad8d9"     # emphasized text
YELLOW = "#ebc13d"   # bright yellow
ORANGE = "#fd9456"   # bright orange
RED = "#ff665c"      # bright red
MAGENTA = "#ff84cd"  # bright magenta
BLUE = "#58a3ff"     # bright blue
CYAN = "#53d6c7"     # bright cyan
GREEN = "#84c747"    # bright green

# Theorem classes in census tables
CLASS_STYLES = {
    "two_arc_transitive": GREEN,
    "complete_multipartite": CYAN,
    "paley": BLUE,
    "not_two_distance_transitive": DIM_0,
    "counterexample": RED,
    "skipped": ORANGE,
}
