//! Snake graphs built by gluing square tiles along the triangle strip of an
//! arc.
//!
//! Tile 1 sits at grid position `(0, 0)`; every later tile sits one step
//! north or east of its predecessor. A graph vertex is identified with its
//! grid point and remembers the polygon vertex it came from.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::triangulation::{Arc, Label, SubTriangulation, Triangulation};

/// Largest supported tile count; edge sets are stored as `u64` bit sets.
pub const MAX_TILES: usize = 21;

pub type GridPoint = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    South,
    East,
    North,
    West,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::South, Side::East, Side::North, Side::West];

    pub fn opposite(self) -> Side {
        match self {
            Side::South => Side::North,
            Side::North => Side::South,
            Side::East => Side::West,
            Side::West => Side::East,
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Side::South | Side::North)
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    North,
    East,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tile {
    /// 1-based position along the arc.
    pub index: usize,
    pub position: GridPoint,
    /// Side labels in `Side::ALL` order.
    pub labels: [Label; 4],
    /// Graph edge index of each side, `Side::ALL` order.
    pub edges: [usize; 4],
    /// The crossed diagonal this tile comes from (removed from the graph).
    pub diagonal: Label,
    /// Polygon vertices at the SW, SE, NE and NW corners.
    pub marks: [usize; 4],
    pub orientation_preserving: bool,
    /// How this tile was placed relative to the previous one.
    pub step: Option<Step>,
}

impl Tile {
    pub fn label(&self, side: Side) -> Label {
        self.labels[side.index()]
    }

    pub fn edge(&self, side: Side) -> usize {
        self.edges[side.index()]
    }

    pub fn corner_points(&self) -> [GridPoint; 4] {
        let (x, y) = self.position;
        [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
    }

    fn side_points(&self, side: Side) -> (GridPoint, GridPoint) {
        let [sw, se, ne, nw] = self.corner_points();
        match side {
            Side::South => (sw, se),
            Side::East => (se, ne),
            Side::North => (nw, ne),
            Side::West => (sw, nw),
        }
    }

    fn side_marks(&self, side: Side) -> (usize, usize) {
        let [sw, se, ne, nw] = self.marks;
        match side {
            Side::South => (sw, se),
            Side::East => (se, ne),
            Side::North => (nw, ne),
            Side::West => (sw, nw),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnakeEdge {
    pub ends: (usize, usize),
    pub label: Label,
    pub interior: bool,
    /// 1-based indices of the tiles containing this edge.
    pub tiles: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnakeGraph {
    pub label_count: usize,
    pub gamma: Arc,
    pub crossed: Vec<Label>,
    pub tiles: Vec<Tile>,
    pub vertices: Vec<GridPoint>,
    /// Polygon vertex of each graph vertex.
    pub marks: Vec<usize>,
    pub edges: Vec<SnakeEdge>,
    /// Set when the arc is itself an edge of the triangulation.
    pub degenerate: Option<Label>,
}

impl SnakeGraph {
    pub fn build(t: &Triangulation, gamma: &Arc) -> Result<SnakeGraph> {
        let Some(strip) = t.strip(gamma) else {
            return Ok(SnakeGraph {
                label_count: t.label_count(),
                gamma: *gamma,
                crossed: Vec::new(),
                tiles: Vec::new(),
                vertices: Vec::new(),
                marks: Vec::new(),
                edges: Vec::new(),
                degenerate: t.label_of(gamma.source, gamma.target),
            });
        };
        let d = strip.d();
        if d > MAX_TILES {
            return Err(Error::TooManyTiles(d, MAX_TILES));
        }
        let m = t.vertex_count();
        let mut g = SnakeGraph {
            label_count: t.label_count(),
            gamma: *gamma,
            crossed: strip.crossed.clone(),
            tiles: Vec::with_capacity(d),
            vertices: Vec::new(),
            marks: Vec::new(),
            edges: Vec::new(),
            degenerate: None,
        };
        let mut vertex_at: HashMap<GridPoint, usize> = HashMap::new();
        let mut edge_at: HashMap<(usize, usize), usize> = HashMap::new();

        for k in 0..d {
            let tau = strip.crossed[k];
            let (p, q) = t.endpoints(tau);
            let off = |tri: &[usize; 3]| *tri.iter().find(|&&v| v != p && v != q).unwrap();
            let sw = off(&strip.triangles[k]);
            let ne = off(&strip.triangles[k + 1]);
            let (position, se, nw, step) = if k == 0 {
                let dist = |v: usize| (v + m - sw) % m;
                let (se, nw) = if dist(p) < dist(q) { (p, q) } else { (q, p) };
                ((0, 0), se, nw, None)
            } else {
                let prev = &g.tiles[k - 1];
                let (pp, pq) = t.endpoints(prev.diagonal);
                // endpoint of the previous diagonal not shared with this one
                let w = if pp == p || pp == q { pq } else { pp };
                let prev_ne = prev.marks[2];
                let other = if prev_ne == p { q } else { p };
                let (x, y) = prev.position;
                if prev.marks[3] == w {
                    ((x, y + 1), prev_ne, other, Some(Step::North))
                } else {
                    debug_assert_eq!(prev.marks[1], w);
                    ((x + 1, y), other, prev_ne, Some(Step::East))
                }
            };
            let marks = [sw, se, ne, nw];
            let mut tile = Tile {
                index: k + 1,
                position,
                labels: [0; 4],
                edges: [0; 4],
                diagonal: tau,
                marks,
                orientation_preserving: k % 2 == 0,
                step,
            };
            let points = tile.corner_points();
            let mut ids = [0usize; 4];
            for i in 0..4 {
                ids[i] = match vertex_at.get(&points[i]) {
                    Some(&id) => {
                        assert_eq!(g.marks[id], marks[i], "glued vertices disagree");
                        id
                    }
                    None => {
                        let id = g.vertices.len();
                        g.vertices.push(points[i]);
                        g.marks.push(marks[i]);
                        vertex_at.insert(points[i], id);
                        id
                    }
                };
            }
            for side in Side::ALL {
                let (a, b) = tile.side_marks(side);
                let label = t.label_of(a, b).expect("tile side is an edge");
                let (pa, pb) = tile.side_points(side);
                let key = {
                    let (ia, ib) = (vertex_at[&pa], vertex_at[&pb]);
                    if ia < ib {
                        (ia, ib)
                    } else {
                        (ib, ia)
                    }
                };
                let eid = match edge_at.get(&key) {
                    Some(&eid) => {
                        let e = &mut g.edges[eid];
                        assert_eq!(e.label, label, "glued edges disagree");
                        e.interior = true;
                        e.tiles.push(k + 1);
                        eid
                    }
                    None => {
                        let eid = g.edges.len();
                        g.edges.push(SnakeEdge {
                            ends: key,
                            label,
                            interior: false,
                            tiles: vec![k + 1],
                        });
                        edge_at.insert(key, eid);
                        eid
                    }
                };
                tile.labels[side.index()] = label;
                tile.edges[side.index()] = eid;
            }
            g.tiles.push(tile);
        }
        Ok(g)
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate.is_some()
    }

    pub fn d(&self) -> usize {
        self.tiles.len()
    }

    pub fn edge_mask_all(&self) -> u64 {
        if self.edges.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }

    /// Number of graph edges carrying each label.
    pub fn label_multiplicity(&self) -> BTreeMap<Label, usize> {
        let mut m = BTreeMap::new();
        for e in &self.edges {
            *m.entry(e.label).or_insert(0) += 1;
        }
        m
    }

    pub fn is_unique_label(&self, label: Label) -> bool {
        self.edges.iter().filter(|e| e.label == label).count() == 1
    }

    /// Labels of the edges that are present in the graph.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.edges.iter().map(|e| e.label).collect()
    }

    pub fn neighbors(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.ends.0].push((e.ends.1, i));
            adj[e.ends.1].push((e.ends.0, i));
        }
        adj
    }

    /// Whether tile `k` (0-based) has both a horizontal and a vertical
    /// neighbor.
    pub fn is_corner(&self, k: usize) -> bool {
        k > 0 && k + 1 < self.tiles.len() && self.tiles[k].step != self.tiles[k + 1].step
    }

    /// 1-based indices of corner tiles, and their count.
    pub fn corners(&self) -> (BTreeSet<usize>, usize) {
        let set: BTreeSet<usize> = (0..self.tiles.len())
            .filter(|&k| self.is_corner(k))
            .map(|k| k + 1)
            .collect();
        let t = set.len();
        (set, t)
    }

    /// Sides of tile `k` (0-based) that are not shared with another tile.
    pub fn exterior_sides(&self, k: usize) -> Vec<Side> {
        Side::ALL
            .into_iter()
            .filter(|&s| !self.edges[self.tiles[k].edge(s)].interior)
            .collect()
    }

    /// The pair of opposite exterior sides of tile `k`, if it has one.
    /// Single-tile graphs have two such pairs; the south/north one is
    /// returned.
    pub fn opposite_exterior_pair(&self, k: usize) -> Option<(Side, Side)> {
        let ext = self.exterior_sides(k);
        [(Side::South, Side::North), (Side::West, Side::East)]
            .into_iter()
            .find(|(a, b)| ext.contains(a) && ext.contains(b))
    }

    pub fn vertex_classes(&self, sub: Option<&SubTriangulation>) -> VertexClassPartition {
        VertexClassPartition::compute(self, sub)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph snake {\n  node [shape=point];\n");
        let (corners, _) = self.corners();
        for (i, &(x, y)) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "  v{i} [pos=\"{x},{y}!\", xlabel=\"{}\"];",
                self.marks[i]
            );
        }
        for tile in &self.tiles {
            let (x, y) = tile.position;
            let style = if corners.contains(&tile.index) {
                ", style=filled, fillcolor=orange"
            } else {
                ""
            };
            let _ = writeln!(
                s,
                "  t{} [shape=plaintext, label=\"T{} ({})\", pos=\"{}.5,{}.5!\"{style}];",
                tile.index, tile.index, tile.diagonal, x, y
            );
        }
        for e in &self.edges {
            let style = if e.interior { ", style=dashed" } else { "" };
            let _ = writeln!(
                s,
                "  v{} -- v{} [label=\"{}\"{style}];",
                e.ends.0, e.ends.1, e.label
            );
        }
        s.push_str("}\n");
        s
    }

    /// Draws the graph on a character grid; corner tiles are marked `*`.
    pub fn to_ascii(&self) -> String {
        if self.tiles.is_empty() {
            return format!("(degenerate: x{})\n", self.degenerate.unwrap_or(0));
        }
        const W: i64 = 6;
        const H: i64 = 3;
        let max_x = self.vertices.iter().map(|p| p.0).max().unwrap();
        let max_y = self.vertices.iter().map(|p| p.1).max().unwrap();
        let cols = (max_x * W + 1) as usize;
        let rows = (max_y * H + 1) as usize;
        let mut canvas = vec![vec![' '; cols + 4]; rows];
        let put = |c: &mut Vec<Vec<char>>, x: i64, y: i64, ch: char| {
            let r = (max_y * H - y) as usize;
            c[r][x as usize] = ch;
        };
        let put_str = |c: &mut Vec<Vec<char>>, x: i64, y: i64, s: &str| {
            for (i, ch) in s.chars().enumerate() {
                let r = (max_y * H - y) as usize;
                let col = x as usize + i;
                if col < c[r].len() {
                    c[r][col] = ch;
                }
            }
        };
        for e in &self.edges {
            let (a, b) = (self.vertices[e.ends.0], self.vertices[e.ends.1]);
            let label = e.label.to_string();
            if a.1 == b.1 {
                let x0 = a.0.min(b.0) * W;
                for x in x0 + 1..x0 + W {
                    put(&mut canvas, x, a.1 * H, '-');
                }
                put_str(&mut canvas, x0 + 2, a.1 * H, &label);
            } else {
                let y0 = a.1.min(b.1) * H;
                for y in y0 + 1..y0 + H {
                    put(&mut canvas, a.0 * W, y, '|');
                }
                put_str(&mut canvas, a.0 * W + 1, y0 + 1, &label);
            }
        }
        for &(x, y) in &self.vertices {
            put(&mut canvas, x * W, y * H, '+');
        }
        let (corners, _) = self.corners();
        for tile in &self.tiles {
            if corners.contains(&tile.index) {
                let (x, y) = tile.position;
                put(&mut canvas, x * W + W / 2, y * H + 2, '*');
            }
        }
        let mut out = String::new();
        for row in canvas {
            let line: String = row.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Vertices of the snake graph grouped by the polygon vertex they represent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub polygon_vertex: usize,
    pub members: Vec<usize>,
    /// `E_[v]`: labels of edges incident to some member.
    pub labels: BTreeSet<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClassPartition {
    pub classes: Vec<VertexClass>,
    /// The partition from knight's-move closure agrees with the tile marks.
    pub knight_consistent: bool,
    /// Every class size equals `|diagonals(w)|` (true when not checked).
    pub sizes_match: bool,
}

const KNIGHT_MOVES: [(i64, i64); 4] = [(-1, 2), (-2, 1), (1, -2), (2, -1)];

impl VertexClassPartition {
    fn compute(g: &SnakeGraph, sub: Option<&SubTriangulation>) -> Self {
        let mut by_mark: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &m) in g.marks.iter().enumerate() {
            by_mark.entry(m).or_default().push(v);
        }
        let adj = g.neighbors();
        let classes: Vec<VertexClass> = by_mark
            .into_iter()
            .map(|(polygon_vertex, members)| {
                let labels = members
                    .iter()
                    .flat_map(|&v| adj[v].iter().map(|&(_, e)| g.edges[e].label))
                    .collect();
                VertexClass {
                    polygon_vertex,
                    members,
                    labels,
                }
            })
            .collect();

        let knight = knight_classes(g);
        let mut from_marks: Vec<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
        from_marks.sort();
        let knight_consistent = knight == from_marks;

        let sizes_match = sub.is_none_or(|s| {
            classes
                .iter()
                .all(|c| s.diagonal_degree.get(&c.polygon_vertex) == Some(&c.members.len()))
        });
        VertexClassPartition {
            classes,
            knight_consistent,
            sizes_match,
        }
    }

    pub fn class_of(&self, v: usize) -> Option<&VertexClass> {
        self.classes.iter().find(|c| c.members.contains(&v))
    }
}

/// Partition of graph vertices into classes connected by northwest-southeast
/// knight's moves, each class sorted, classes sorted.
pub fn knight_classes(g: &SnakeGraph) -> Vec<Vec<usize>> {
    let n = g.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let index: HashMap<GridPoint, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    for (i, &(x, y)) in g.vertices.iter().enumerate() {
        for (dx, dy) in KNIGHT_MOVES {
            if let Some(&j) = index.get(&(x + dx, y + dy)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// One checked statement of the structure report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub checks: Vec<StructureCheck>,
    /// Sides of tiles 2 and d-1 on which the first and last crossed
    /// diagonals landed.
    pub end_diagonal_sides: Option<(Side, Side)>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StructureCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn edge_points(g: &SnakeGraph, e: usize) -> (GridPoint, GridPoint) {
    let (a, b) = g.edges[e].ends;
    let (pa, pb) = (g.vertices[a], g.vertices[b]);
    if pa <= pb {
        (pa, pb)
    } else {
        (pb, pa)
    }
}

fn is_horizontal(g: &SnakeGraph, e: usize) -> bool {
    let (a, b) = edge_points(g, e);
    a.1 == b.1
}

/// Checks how features of the sub-triangulation show up in the snake graph.
pub fn structure_report(
    g: &SnakeGraph,
    t: &Triangulation,
    sub: &SubTriangulation,
) -> StructureReport {
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, witness: String| {
        checks.push(StructureCheck {
            name: name.to_string(),
            passed,
            witness,
        })
    };
    let d = g.d();
    let crossed = &sub.crossed;
    let mult = g.label_multiplicity();
    let edges_with = |l: Label| -> Vec<usize> {
        (0..g.edges.len())
            .filter(|&e| g.edges[e].label == l)
            .collect()
    };

    check(
        "tile count equals number of crossed diagonals",
        d == crossed.len(),
        format!("tiles={d}, |D|={}", crossed.len()),
    );
    check(
        "2d+2 vertices and 3d+1 edges",
        g.vertices.len() == 2 * d + 2 && g.edges.len() == 3 * d + 1,
        format!("V={}, E={}", g.vertices.len(), g.edges.len()),
    );
    let max_mult = mult.values().copied().max().unwrap_or(0);
    check(
        "every label is used at most twice",
        max_mult <= 2,
        format!("max multiplicity {max_mult}"),
    );
    let bad_interior: Vec<Label> = g
        .edges
        .iter()
        .filter(|e| e.interior && mult[&e.label] != 1)
        .map(|e| e.label)
        .collect();
    check(
        "interior edges carry unique labels",
        bad_interior.is_empty(),
        format!("{bad_interior:?}"),
    );

    let (corner_set, _) = g.corners();
    for (k, &a) in crossed.iter().enumerate() {
        if k == 0 || k + 1 == d {
            continue;
        }
        let balanced = t.is_balanced(&sub.gamma, a).unwrap_or(false);
        let es = edges_with(a);
        let exterior = es.iter().all(|&e| !g.edges[e].interior);
        let tile_between = k + 1;
        let on_neighbors = es.len() == 2
            && es.iter().any(|&e| g.edges[e].tiles == vec![k])
            && es.iter().any(|&e| g.edges[e].tiles == vec![k + 2]);
        if balanced {
            let mut ok = es.len() == 2 && exterior && on_neighbors;
            let mut witness = format!("label {a}: edges {es:?}");
            if ok {
                let (p0, p1) = edge_points(g, es[0]);
                let (q0, q1) = edge_points(g, es[1]);
                let delta = (q0.0 - p0.0, q0.1 - p0.1);
                let parallel = is_horizontal(g, es[0]) == is_horizontal(g, es[1]);
                let same_shift = (q1.0 - p1.0, q1.1 - p1.1) == delta;
                let knight = KNIGHT_MOVES.contains(&delta);
                ok = parallel && same_shift && knight && !corner_set.contains(&tile_between);
                witness = format!(
                    "label {a}: {:?} and {:?}, shift {delta:?}, tile {tile_between} corner={}",
                    (p0, p1),
                    (q0, q1),
                    corner_set.contains(&tile_between)
                );
            }
            check(
                "balanced middle diagonal gives parallel exterior pair a knight's move apart",
                ok,
                witness,
            );
        } else {
            let mut ok = es.len() == 2 && exterior && on_neighbors;
            let mut witness = format!("label {a}: edges {es:?}");
            if ok {
                let (x, y) = (g.edges[es[0]].ends, g.edges[es[1]].ends);
                let share = x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1;
                let perpendicular = is_horizontal(g, es[0]) != is_horizontal(g, es[1]);
                ok = share && perpendicular && corner_set.contains(&tile_between);
                witness = format!(
                    "label {a}: perpendicular={perpendicular}, share vertex={share}, tile {tile_between} corner={}",
                    corner_set.contains(&tile_between)
                );
            }
            check(
                "imbalanced middle diagonal gives perpendicular exterior pair at a corner",
                ok,
                witness,
            );
        }
    }

    for &l in &sub.boundary {
        if sub.touches_gamma(l) {
            continue;
        }
        let es = edges_with(l);
        check(
            "boundary segment away from the arc is a unique interior edge",
            es.len() == 1 && g.edges[es[0]].interior,
            format!("label {l}: edges {es:?}"),
        );
    }

    if d >= 1 {
        let first = &g.tiles[0];
        let last = &g.tiles[d - 1];
        let at = |w: usize| -> BTreeSet<Label> {
            sub.boundary
                .iter()
                .copied()
                .filter(|&l| {
                    let (a, b) = sub.endpoints(l).unwrap();
                    a == w || b == w
                })
                .collect()
        };
        let start_pair = at(sub.gamma.source);
        let got: BTreeSet<Label> = [first.label(Side::South), first.label(Side::West)].into();
        let unique = got.iter().all(|&l| mult[&l] == 1);
        check(
            "segments at the source are the bottom and left of the first tile",
            got == start_pair && unique,
            format!("expected {start_pair:?}, got {got:?}"),
        );
        let end_pair = at(sub.gamma.target);
        let got: BTreeSet<Label> = [last.label(Side::North), last.label(Side::East)].into();
        let unique = got.iter().all(|&l| mult[&l] == 1);
        check(
            "segments at the target are the top and right of the last tile",
            got == end_pair && unique,
            format!("expected {end_pair:?}, got {got:?}"),
        );
    }

    let mut end_sides = None;
    if d >= 2 {
        let first_diag = crossed[0];
        let last_diag = crossed[d - 1];
        let second = &g.tiles[1];
        let penultimate = &g.tiles[d - 2];
        let side_of = |tile: &Tile, l: Label, allowed: [Side; 2]| {
            allowed
                .into_iter()
                .find(|&s| tile.label(s) == l && !g.edges[tile.edge(s)].interior && mult[&l] == 1)
        };
        let s1 = side_of(second, first_diag, [Side::West, Side::South]);
        let s2 = side_of(penultimate, last_diag, [Side::East, Side::North]);
        check(
            "first crossed diagonal is a unique left/bottom exterior edge of tile 2",
            s1.is_some(),
            format!("label {first_diag}: {s1:?}"),
        );
        check(
            "last crossed diagonal is a unique right/top exterior edge of tile d-1",
            s2.is_some(),
            format!("label {last_diag}: {s2:?}"),
        );
        if let (Some(a), Some(b)) = (s1, s2) {
            end_sides = Some((a, b));
        }
    } else if d == 1 {
        check(
            "lone crossed diagonal is absent from the graph",
            !mult.contains_key(&crossed[0]),
            format!("label {}", crossed[0]),
        );
    }

    let imbalanced = sub
        .middle()
        .iter()
        .filter(|&&a| !t.is_balanced(&sub.gamma, a).unwrap_or(true))
        .count();
    check(
        "corner count equals number of imbalanced middle diagonals",
        imbalanced == corner_set.len(),
        format!("imbalanced={imbalanced}, corners={}", corner_set.len()),
    );

    let cycle_rank = g.edges.len() as i64 - g.vertices.len() as i64 + 1;
    check(
        "|E| - |V| + 1 equals the tile count",
        cycle_rank == d as i64,
        format!("{cycle_rank}"),
    );

    let classes = g.vertex_classes(Some(sub));
    check(
        "knight's-move classes agree with the polygon-vertex correspondence",
        classes.knight_consistent,
        String::new(),
    );
    check(
        "class sizes equal |diagonals(w)|",
        classes.sizes_match,
        String::new(),
    );

    // same label <=> endpoints equivalent coordinatewise
    let class_id: Vec<usize> = g.marks.clone();
    let mut label_ok = true;
    for (i, e) in g.edges.iter().enumerate() {
        for f in &g.edges[i + 1..] {
            let same_class = {
                let (a, b) = (class_id[e.ends.0], class_id[e.ends.1]);
                let (c, dd) = (class_id[f.ends.0], class_id[f.ends.1]);
                (a == c && b == dd) || (a == dd && b == c)
            };
            if same_class != (e.label == f.label) {
                label_ok = false;
            }
        }
    }
    check(
        "edges share a label exactly when their endpoints are equivalent",
        label_ok,
        String::new(),
    );

    StructureReport {
        checks,
        end_diagonal_sides: end_sides,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonagon() -> (Triangulation, Arc) {
        (
            Triangulation::new(9, &[(0, 7), (0, 6), (0, 5), (0, 4), (1, 4), (1, 3)]).unwrap(),
            Arc::new(7, 2, 9).unwrap(),
        )
    }

    #[test]
    fn nonagon_snake_layout() {
        let (t, g) = nonagon();
        let s = SnakeGraph::build(&t, &g).unwrap();
        assert_eq!(s.d(), 5);
        let pos: Vec<GridPoint> = s.tiles.iter().map(|t| t.position).collect();
        assert_eq!(pos, vec![(0, 0), (0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(s.corners(), (BTreeSet::from([2]), 1));
        assert_eq!(s.tiles[0].labels, [1, 3, 12, 13]);
        let interior: BTreeSet<Label> = s
            .edges
            .iter()
            .filter(|e| e.interior)
            .map(|e| e.label)
            .collect();
        assert_eq!(interior, BTreeSet::from([7, 10, 11, 12]));
        assert_eq!(s.vertices.len(), 12);
        assert_eq!(s.edges.len(), 16);
    }

    #[test]
    fn nonagon_vertex_class_of_a() {
        let (t, g) = nonagon();
        let s = SnakeGraph::build(&t, &g).unwrap();
        let sub = t.sub_triangulation(&g).unwrap();
        let p = s.vertex_classes(Some(&sub));
        assert!(p.knight_consistent);
        assert!(p.sizes_match);
        let a = p.classes.iter().find(|c| c.polygon_vertex == 0).unwrap();
        assert_eq!(a.members.len(), 3);
        assert_eq!(a.labels, BTreeSet::from([1, 2, 3, 4, 7]));
        let total: usize = p.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 2 * 5 + 2);
    }

    #[test]
    fn quadrilateral_single_tile() {
        let t = Triangulation::new(4, &[(0, 2)]).unwrap();
        let s = SnakeGraph::build(&t, &Arc::new(1, 3, 4).unwrap()).unwrap();
        assert_eq!(s.d(), 1);
        assert_eq!(s.labels(), BTreeSet::from([2, 3, 4, 5]));
        let p = s.vertex_classes(None);
        assert_eq!(p.classes.len(), 4);
        assert!(p.classes.iter().all(|c| c.members.len() == 1));
        assert_eq!(s.corners().1, 0);
    }

    #[test]
    fn hexagon_straight_strip() {
        let t = Triangulation::new(6, &[(1, 3), (0, 3), (0, 4)]).unwrap();
        let s = SnakeGraph::build(&t, &Arc::new(2, 5, 6).unwrap()).unwrap();
        assert_eq!(s.d(), 3);
        let xs: BTreeSet<i64> = s.vertices.iter().map(|p| p.0).collect();
        let ys: BTreeSet<i64> = s.vertices.iter().map(|p| p.1).collect();
        // a 2-by-4 grid, in one orientation or the other
        assert_eq!(xs.len() * ys.len(), 8);
        assert_eq!(s.corners().1, 0);
    }

    #[test]
    fn staircase_has_one_corner() {
        // imbalanced middle diagonal: fan at vertex 0 crossed by (1, 4)
        let t = Triangulation::new(5, &[(0, 2), (0, 3)]).unwrap();
        let s = SnakeGraph::build(&t, &Arc::new(1, 4, 5).unwrap()).unwrap();
        assert_eq!(s.d(), 2);
        let t6 = Triangulation::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let s6 = SnakeGraph::build(&t6, &Arc::new(1, 5, 6).unwrap()).unwrap();
        assert_eq!(s6.d(), 3);
        assert_eq!(s6.corners().1, 1);
    }

    #[test]
    fn degenerate_arc_graph() {
        let (t, _) = nonagon();
        let s = SnakeGraph::build(&t, &Arc::new(0, 4, 9).unwrap()).unwrap();
        assert_eq!(s.degenerate, Some(4));
        assert!(s.tiles.is_empty());
    }

    #[test]
    fn nonagon_structure_report() {
        let (t, g) = nonagon();
        let s = SnakeGraph::build(&t, &g).unwrap();
        let sub = t.sub_triangulation(&g).unwrap();
        let r = structure_report(&s, &t, &sub);
        let fails: Vec<_> = r.failures().collect();
        assert!(fails.is_empty(), "{fails:?}");
        // 4 and 5 balanced, 3 imbalanced, 7 10 11 12 interior
        assert_eq!(
            r.checks
                .iter()
                .filter(|c| c.name.starts_with("balanced middle"))
                .count(),
            2
        );
        assert_eq!(
            r.checks
                .iter()
                .filter(|c| c.name.starts_with("imbalanced middle"))
                .count(),
            1
        );
        assert_eq!(
            r.checks
                .iter()
                .filter(|c| c.name.starts_with("boundary segment away"))
                .count(),
            4
        );
        assert_eq!(r.end_diagonal_sides, Some((Side::West, Side::North)));
    }

    #[test]
    fn quadrilateral_structure_report() {
        let t = Triangulation::new(4, &[(0, 2)]).unwrap();
        let g = Arc::new(1, 3, 4).unwrap();
        let s = SnakeGraph::build(&t, &g).unwrap();
        let sub = t.sub_triangulation(&g).unwrap();
        let r = structure_report(&s, &t, &sub);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn emitters_mention_every_label() {
        let (t, g) = nonagon();
        let s = SnakeGraph::build(&t, &g).unwrap();
        let dot = s.to_dot();
        let ascii = s.to_ascii();
        for l in s.labels() {
            assert!(dot.contains(&format!("label=\"{l}\"")));
            assert!(ascii.contains(&l.to_string()));
        }
        assert!(ascii.contains('*'));
    }
}
