"""Ready-to-cut 2D fold patterns.

A layer pattern is the developed (laid-flat) sheet: n+1 panels side by
side, n alternating mountain/valley crease lines at the panel boundaries,
and optional connector tabs along the two chordwise edges.  Patterns are
expressed in millimetres and exported as SVG (one group per semantic
class) or as a plain segment CSV.
"""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from . import units
from .core import Assembly, LayerSpec, Material, folded_dimensions, mass
from .errors import DomainError, FabricationError
from .records import fmt6, sig6

MOUNTAIN = "mountain"
VALLEY = "valley"

Point = tuple[float, float]
Segment = tuple[Point, Point]

STROKE = {
    "cut": ("#000000", None),
    MOUNTAIN: ("#cc0000", "4 2"),
    VALLEY: ("#0066cc", "4 2 1 2"),
    "tab-fold": ("#888888", "4 2"),
}


@dataclass(frozen=True)
class TabSpec:
    """Connector tab parameters: rectangular flaps of `depth_mm` attached
    to both chordwise edges of every panel.  Disable with enabled=False."""

    depth_mm: float = 5.0
    enabled: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.depth_mm) and self.depth_mm > 0):
            raise DomainError(f"tab depth must be positive, got {self.depth_mm}")


@dataclass(frozen=True)
class Tab:
    polygon: tuple[Point, ...]
    fold: Segment


@dataclass(frozen=True)
class FoldPattern:
    """One layer's cut file: sheet outline, crease lines, tabs, and the
    design parameters echoed for traceability.  Units: mm."""

    outline: tuple[Point, ...]
    creases: tuple[tuple[Segment, str], ...]
    tabs: tuple[Tab, ...]
    metadata: dict

    def bounding_box(self) -> tuple[float, float]:
        """(width, height) of the sheet outline (tabs excluded)."""
        xs = [p[0] for p in self.outline]
        ys = [p[1] for p in self.outline]
        return (max(xs) - min(xs), max(ys) - min(ys))

    def extent(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) over all geometry, tabs included."""
        pts = list(self.outline)
        for (p1, p2), _ in self.creases:
            pts += [p1, p2]
        for tab in self.tabs:
            pts += list(tab.polygon)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return (min(xs), min(ys), max(xs), max(ys))


def _dedupe_outline(pts: list[Point]) -> tuple[Point, ...]:
    """Drop repeated and collinear vertices from a closed polyline."""
    out = []
    for p in pts:
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()

    def collinear(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])

    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if collinear(a, b, c):
                out.pop(i)
                changed = True
                break
    return tuple(out)


def _offset_rectilinear(pts: tuple[Point, ...], r: float) -> tuple[Point, ...]:
    """Outward miter offset of an axis-aligned simple polygon by r."""
    if r == 0.0:
        return pts
    k = len(pts)
    area2 = sum(pts[i][0] * pts[(i + 1) % k][1] - pts[(i + 1) % k][0] * pts[i][1]
                for i in range(k))
    sign = 1.0 if area2 > 0 else -1.0
    lines = []  # ("v", x) or ("h", y) per edge, already offset outward
    for i in range(k):
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % k]
        if x1 == x2:  # vertical edge; outward normal is (dy, -dx)/|d| * sign
            lines.append(("v", x1 + sign * math.copysign(r, y2 - y1)))
        elif y1 == y2:
            lines.append(("h", y1 - sign * math.copysign(r, x2 - x1)))
        else:
            raise DomainError("kerf offset requires an axis-aligned outline")
    out = []
    for i in range(k):
        prev = lines[i - 1]
        cur = lines[i]
        if prev[0] == cur[0]:
            raise DomainError("kerf offset requires alternating edge directions")
        x = prev[1] if prev[0] == "v" else cur[1]
        y = prev[1] if prev[0] == "h" else cur[1]
        out.append((x, y))
    return tuple(out)


def _material_meta(m: Material) -> dict:
    return {
        "E_GPa": sig6(units.pa_to_gpa(m.E)),
        "nu": sig6(m.nu),
        "t_mm": sig6(units.m_to_mm(m.t)),
        "rho_g_cm3": sig6(units.kg_m3_to_g_cm3(m.rho)),
    }


def generate_layer_pattern(layer: LayerSpec, tab: TabSpec | None = TabSpec(),
                           *, fab_limit: float | None = None,
                           start: str = MOUNTAIN,
                           kerf_mm: float = 0.0) -> FoldPattern:
    """Developed cut pattern of one corrugated layer.

    `fab_limit` (m) raises FabricationError when the flat sheet exceeds the
    cutter envelope.  `start` selects the first crease kind; kinds then
    alternate strictly.  `kerf_mm` offsets the sheet outline outward.
    """
    if start not in (MOUNTAIN, VALLEY):
        raise DomainError(f"start must be 'mountain' or 'valley', got {start!r}")
    W = units.m_to_mm(layer.W)
    heights = [units.m_to_mm(h) for h in layer.panels()]
    k = layer.n + 1
    width = k * W
    H = max(heights)
    if fab_limit is not None:
        lim = units.m_to_mm(fab_limit)
        if width > lim or H > lim:
            raise FabricationError(
                f"flat sheet {fmt6(width)} x {fmt6(H)} mm exceeds the "
                f"fabrication limit {fmt6(lim)} mm")

    xs = [j * W for j in range(k + 1)]
    bots = [0.5 * (H - h) for h in heights]
    tops = [0.5 * (H + h) for h in heights]

    trace: list[Point] = []
    for j in range(k):
        trace.append((xs[j], bots[j]))
        trace.append((xs[j + 1], bots[j]))
    for j in reversed(range(k)):
        trace.append((xs[j + 1], tops[j]))
        trace.append((xs[j], tops[j]))
    outline = _offset_rectilinear(_dedupe_outline(trace), kerf_mm)

    creases = []
    kind = start
    for i in range(1, k):
        y1 = max(bots[i - 1], bots[i])
        y2 = min(tops[i - 1], tops[i])
        if y2 <= y1:
            raise DomainError(f"adjacent panels {i} and {i + 1} do not share an edge")
        creases.append((((xs[i], y1), (xs[i], y2)), kind))
        kind = VALLEY if kind == MOUNTAIN else MOUNTAIN

    tabs = []
    if tab is not None and tab.enabled:
        d = tab.depth_mm
        for j in range(k):
            poly = ((xs[j], bots[j]), (xs[j + 1], bots[j]),
                    (xs[j + 1], bots[j] - d), (xs[j], bots[j] - d))
            tabs.append(Tab(poly, ((xs[j], bots[j]), (xs[j + 1], bots[j]))))
        for j in range(k):
            poly = ((xs[j], tops[j]), (xs[j + 1], tops[j]),
                    (xs[j + 1], tops[j] + d), (xs[j], tops[j] + d))
            tabs.append(Tab(poly, ((xs[j], tops[j]), (xs[j + 1], tops[j]))))

    folded_len, folded_t = folded_dimensions(layer)
    metadata = {
        "kind": "layer-pattern",
        "units": "mm",
        "W_mm": sig6(W),
        "alpha_deg": sig6(units.rad_to_deg(layer.alpha)),
        "n": layer.n,
        "crease_lengths_mm": [sig6(units.m_to_mm(L)) for L in layer.L],
        "folded_length_mm": sig6(units.m_to_mm(folded_len)),
        "folded_thickness_mm": sig6(units.m_to_mm(folded_t)),
        "material": _material_meta(layer.material),
        "tab_depth_mm": sig6(tab.depth_mm) if tab is not None and tab.enabled else 0.0,
        "start_crease": start,
        "kerf_mm": sig6(kerf_mm),
    }
    return FoldPattern(outline, tuple(creases), tuple(tabs), metadata)


def assembly_kit(assembly: Assembly, tab: TabSpec | None = TabSpec(), *,
                 fab_limit: float | None = None,
                 connector_allowance: float = 0.0,
                 start: str = MOUNTAIN,
                 kerf_mm: float = 0.0) -> tuple[FoldPattern, FoldPattern, dict]:
    """Cut patterns for both layers plus assembly notes."""
    p1 = generate_layer_pattern(assembly.layer1, tab, fab_limit=fab_limit,
                                start=start, kerf_mm=kerf_mm)
    p2 = generate_layer_pattern(assembly.layer2, tab, fab_limit=fab_limit,
                                start=start, kerf_mm=kerf_mm)
    len1, t1 = folded_dimensions(assembly.layer1)
    len2, t2 = folded_dimensions(assembly.layer2)
    notes = {
        "kind": "assembly-kit",
        "orientation": ("fold both layers, then stack with layer 2 rotated 90 "
                        "degrees so its creases run orthogonal to layer 1's; "
                        "join along the edges with the tabs"),
        "folded_footprint_mm": [sig6(units.m_to_mm(len1)), sig6(units.m_to_mm(len2))],
        "folded_thickness_mm": sig6(units.m_to_mm(0.5 * (t1 + t2))),
        "mass_g": sig6(units.kg_to_g(mass(assembly, connector_allowance))),
    }
    return p1, p2, notes


def generate_assembly_kit(solution, material: Material,
                          tab: TabSpec | None = TabSpec(), *,
                          fab_limit: float | None = None,
                          connector_allowance: float = 0.0,
                          start: str = MOUNTAIN,
                          kerf_mm: float = 0.0) -> tuple[FoldPattern, FoldPattern, dict]:
    """Cut patterns for an optimizer solution (identical square or circular
    layers)."""
    from .core import circular_layer, square_layer  # local to avoid cycle noise

    if solution.layout == "circular":
        layer = circular_layer(material, solution.W, solution.alpha, solution.n,
                               solution.R)
    else:
        layer = square_layer(material, solution.W, solution.alpha, solution.n)
    return assembly_kit(Assembly(layer, layer), tab, fab_limit=fab_limit,
                        connector_allowance=connector_allowance, start=start,
                        kerf_mm=kerf_mm)


# ---------------------------------------------------------------------------
# SVG writer / reader


def _pt(p: Point) -> str:
    return f"{p[0]:.6f},{p[1]:.6f}"


def svg_text(pattern: FoldPattern) -> str:
    """Render the pattern as SVG, one group per semantic class.

    Document units are mm (viewBox in mm), stroke width 0.1 mm, cut lines
    solid, mountain folds dashed 4 2, valley folds dash-dot 4 2 1 2.  The
    full design record rides along in a comment.
    """
    min_x, min_y, max_x, max_y = pattern.extent()
    w = max_x - min_x
    h = max_y - min_y
    meta = json.dumps(pattern.metadata, sort_keys=True, ensure_ascii=False)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.6f}mm" '
        f'height="{h:.6f}mm" viewBox="{min_x:.6f} {min_y:.6f} {w:.6f} {h:.6f}">',
        f"<!-- oadlc:metadata {meta} -->",
    ]

    def open_group(cls):
        stroke, dash = STROKE[cls]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        lines.append(f'<g class="{cls}" fill="none" stroke="{stroke}" '
                     f'stroke-width="0.1"{dash_attr}>')

    open_group("cut")
    lines.append(f'<polygon points="{" ".join(_pt(p) for p in pattern.outline)}"/>')
    for tab in pattern.tabs:
        lines.append(f'<polygon points="{" ".join(_pt(p) for p in tab.polygon)}"/>')
    lines.append("</g>")

    for cls in (MOUNTAIN, VALLEY):
        open_group(cls)
        for (p1, p2), kind in pattern.creases:
            if kind == cls:
                lines.append(f'<line x1="{p1[0]:.6f}" y1="{p1[1]:.6f}" '
                             f'x2="{p2[0]:.6f}" y2="{p2[1]:.6f}"/>')
        lines.append("</g>")

    open_group("tab-fold")
    for tab in pattern.tabs:
        (p1, p2) = tab.fold
        lines.append(f'<line x1="{p1[0]:.6f}" y1="{p1[1]:.6f}" '
                     f'x2="{p2[0]:.6f}" y2="{p2[1]:.6f}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(pattern: FoldPattern, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(svg_text(pattern))


def _parse_points(text: str) -> tuple[Point, ...]:
    pts = []
    for token in text.replace(",", " ").split():
        pts.append(float(token))
    return tuple((pts[i], pts[i + 1]) for i in range(0, len(pts), 2))


def read_svg(path) -> FoldPattern:
    """Parse a pattern file written by `write_svg` back into a FoldPattern."""
    parser = ET.XMLParser(target=ET.TreeBuilder(insert_comments=True))
    tree = ET.parse(path, parser=parser)
    root = tree.getroot()

    metadata = {}
    groups: dict[str, list] = {"cut": [], MOUNTAIN: [], VALLEY: [], "tab-fold": []}
    for node in root.iter():
        if node.tag is ET.Comment:
            text = (node.text or "").strip()
            if text.startswith("oadlc:metadata"):
                metadata = json.loads(text[len("oadlc:metadata"):])
            continue
        tag = node.tag.rsplit("}", 1)[-1]
        if tag != "g":
            continue
        cls = node.get("class")
        if cls not in groups:
            continue
        for child in node:
            ctag = child.tag.rsplit("}", 1)[-1]
            if ctag == "polygon":
                groups[cls].append(_parse_points(child.get("points")))
            elif ctag == "line":
                p1 = (float(child.get("x1")), float(child.get("y1")))
                p2 = (float(child.get("x2")), float(child.get("y2")))
                groups[cls].append((p1, p2))

    polygons = groups["cut"]
    if not polygons:
        raise DomainError("no cut outline found in pattern file")
    outline = polygons[0]
    tab_polys = polygons[1:]
    folds = groups["tab-fold"]
    if len(folds) != len(tab_polys):
        raise DomainError("tab outlines and tab fold lines do not match up")
    tabs = tuple(Tab(poly, fold) for poly, fold in zip(tab_polys, folds))

    creases = [(seg, MOUNTAIN) for seg in groups[MOUNTAIN]]
    creases += [(seg, VALLEY) for seg in groups[VALLEY]]
    creases.sort(key=lambda item: item[0][0])
    return FoldPattern(outline, tuple(creases), tabs, metadata)


def segments(pattern: FoldPattern):
    """All pattern segments as (x1, y1, x2, y2, class) rows."""
    rows = []

    def polygon_rows(poly, cls):
        k = len(poly)
        for i in range(k):
            (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % k]
            rows.append((x1, y1, x2, y2, cls))

    polygon_rows(pattern.outline, "cut")
    for tab in pattern.tabs:
        polygon_rows(tab.polygon, "cut")
    for (p1, p2), kind in pattern.creases:
        rows.append((p1[0], p1[1], p2[0], p2[1], kind))
    for tab in pattern.tabs:
        (p1, p2) = tab.fold
        rows.append((p1[0], p1[1], p2[0], p2[1], "tab-fold"))
    return rows


def csv_text(pattern: FoldPattern) -> str:
    lines = ["x1,y1,x2,y2,class"]
    for x1, y1, x2, y2, cls in segments(pattern):
        lines.append(f"{x1:.6f},{y1:.6f},{x2:.6f},{y2:.6f},{cls}")
    return "\n".join(lines) + "\n"


def write_csv(pattern: FoldPattern, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(pattern))


# ---------------------------------------------------------------------------
# Geometry validation helpers (used by the test suite)


def polygon_area(poly) -> float:
    k = len(poly)
    return 0.5 * abs(sum(poly[i][0] * poly[(i + 1) % k][1]
                         - poly[(i + 1) % k][0] * poly[i][1] for i in range(k)))


def _segments_cross(a, b, c, d) -> bool:
    """True when segments ab and cd properly intersect."""

    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


def outline_is_simple(poly) -> bool:
    """Non-adjacent edges of the closed polyline must not cross."""
    k = len(poly)
    edges = [(poly[i], poly[(i + 1) % k]) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if j == i + 1 or (i == 0 and j == k - 1):
                continue
            if _segments_cross(*edges[i], *edges[j]):
                return False
    return True
