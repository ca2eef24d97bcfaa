//! Standard desk-scale complexes and maps used by tests, the acceptance suite
//! and the command-line front end.

use std::sync::Arc;

use crate::algebra::SimplicialMapData;
use crate::coincidence::{octahedron_points, polygon_points, suspension_points, PLTarget};
use crate::complex::{staircase_product, Ordering, OrientedComplex, Subcomplex};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The `n`-gon `C_n` with every edge directed `i -> i+1 (mod n)`.
pub fn circle(n: usize) -> OrientedComplex {
    assert!(n >= 3, "a simplicial circle needs at least 3 vertices");
    let tops = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    OrientedComplex::new(format!("C{n}"), labels(n), tops, Some(vec![1; n]), Ordering::Local)
        .and_then(OrientedComplex::into_manifold)
        .expect("C_n is a closed 1-manifold")
}

/// Boundary of the 3-simplex.
pub fn tetrahedron() -> OrientedComplex {
    let tops = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
    OrientedComplex::new("S2_tet", labels(4), tops, Some(vec![1, -1, 1, -1]), Ordering::Total)
        .and_then(OrientedComplex::into_manifold)
        .expect("tetrahedron boundary is S^2")
}

/// Octahedron with vertices `+x, -x, +y, -y, +z, -z`, oriented by the outward normal.
pub fn octahedron() -> OrientedComplex {
    let names = ["+x", "-x", "+y", "-y", "+z", "-z"].map(String::from).to_vec();
    let mut tops = Vec::new();
    let mut signs = Vec::new();
    for (a, sa) in [(0, 1), (1, -1)] {
        for (b, sb) in [(2, 1), (3, -1)] {
            for (c, sc) in [(4, 1), (5, -1)] {
                tops.push(vec![a, b, c]);
                // det(x, y, z) of the three unit vectors is the product of signs
                signs.push((sa * sb * sc) as i8);
            }
        }
    }
    OrientedComplex::new("S2_oct", names, tops, Some(signs), Ordering::Total)
        .and_then(OrientedComplex::into_manifold)
        .expect("octahedron is S^2")
}

/// Equator `z = 0` of the octahedron.
pub fn octahedron_equator(k: &OrientedComplex) -> Subcomplex {
    Subcomplex::full(k, "equator", &[0, 1, 2, 3])
}

/// Six-vertex projective plane (no orientation).
pub fn rp2() -> OrientedComplex {
    let raw = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ];
    let tops = raw.iter().map(|t| t.iter().map(|&v| v - 1).collect()).collect();
    OrientedComplex::new("RP2_6", (1..=6).map(|i| i.to_string()).collect(), tops, None, Ordering::Total)
        .expect("valid complex")
}

/// Vertex `(i, j)` of an `a x b` torus grid.
pub fn torus_vertex(b: usize, i: usize, j: usize) -> usize {
    i * b + j
}

/// Torus from an `a x b` grid of squares, each cut along the anti-diagonal
/// `(i+1, j) -- (i, j+1)`. Horizontal and vertical edges point in the
/// increasing direction; `forward(i, j)` directs the anti-diagonal of square
/// `(i, j)` from `(i+1, j)` to `(i, j+1)`, otherwise the reverse.
pub fn torus_grid_with(a: usize, b: usize, forward: impl Fn(usize, usize) -> bool) -> OrientedComplex {
    assert!(a >= 3 && b >= 3, "torus grid needs at least 3 x 3 squares");
    let names = (0..a).flat_map(|i| (0..b).map(move |j| format!("({i},{j})"))).collect();
    let v = |i: usize, j: usize| torus_vertex(b, i % a, j % b);
    let mut tops = Vec::new();
    let mut signs = Vec::new();
    for i in 0..a {
        for j in 0..b {
            let (p, q, r, s) = (v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1));
            // lower triangle p, q, r is counterclockwise; upper q, r, s is clockwise
            if forward(i, j) {
                tops.push(vec![p, q, r]);
                signs.push(1);
                tops.push(vec![q, r, s]);
                signs.push(-1);
            } else {
                tops.push(vec![p, r, q]);
                signs.push(-1);
                tops.push(vec![r, q, s]);
                signs.push(1);
            }
        }
    }
    OrientedComplex::new(format!("T2_{a}x{b}"), names, tops, Some(signs), Ordering::Local)
        .and_then(OrientedComplex::into_manifold)
        .expect("grid torus is a closed surface")
}

pub fn torus_grid(a: usize, b: usize) -> OrientedComplex {
    torus_grid_with(a, b, |_, _| true)
}

/// The horizontal circle `j = const`.
pub fn torus_row(t: &OrientedComplex, a: usize, b: usize, j: usize) -> Subcomplex {
    let vs: Vec<usize> = (0..a).map(|i| torus_vertex(b, i, j)).collect();
    Subcomplex::full(t, format!("row{j}"), &vs)
}

/// The vertical circle `i = const`.
pub fn torus_column(t: &OrientedComplex, _a: usize, b: usize, i: usize) -> Subcomplex {
    let vs: Vec<usize> = (0..b).map(|j| torus_vertex(b, i, j)).collect();
    Subcomplex::full(t, format!("col{i}"), &vs)
}

/// Suspension with apexes `N` and `S` appended last; `[s, N]` keeps the sign
/// of `s` and `[s, S]` takes the opposite one.
pub fn suspension(k: &OrientedComplex) -> OrientedComplex {
    let n = k.num_vertices();
    let mut names = k.labels().to_vec();
    names.push("N".into());
    names.push("S".into());
    let m = k.dim();
    let base: Vec<i8> = k.orientation().map(<[i8]>::to_vec).unwrap_or_else(|| vec![1; k.count(m)]);
    let mut tops = Vec::new();
    let mut signs = Vec::new();
    for (i, s) in k.simplices(m).iter().enumerate() {
        for (apex, sign) in [(n, 1), (n + 1, -1)] {
            let mut t = s.clone();
            t.push(apex);
            tops.push(t);
            signs.push(base[i] * sign);
        }
    }
    let oriented = k.orientation().is_some();
    let s = OrientedComplex::new(format!("S({})", k.name()), names, tops, oriented.then_some(signs), Ordering::Local)
        .expect("suspension of a valid complex is valid");
    if k.is_manifold() {
        s.clone().into_manifold().unwrap_or(s)
    } else {
        s
    }
}

/// `S^1 x S^2` as the staircase product of `C_3` and the tetrahedron.
pub fn s1_times_s2() -> OrientedComplex {
    staircase_product(&circle(3), &tetrahedron()).into_complex().renamed("S1xS2")
}

/// The closed oriented manifolds used throughout the duality tests.
pub fn test_manifolds() -> Vec<OrientedComplex> {
    vec![circle(3).renamed("S1"), octahedron().renamed("S2"), torus_grid(3, 3).renamed("T2"), s1_times_s2()]
}

/// Two tetrahedron boundaries glued at one vertex: every edge has two
/// cofaces but the link of the shared vertex is disconnected.
pub fn pinched_sphere_pair() -> OrientedComplex {
    let tet = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    let mut tops = Vec::new();
    let mut signs = Vec::new();
    for base in [[0usize, 1, 2, 3], [0, 4, 5, 6]] {
        for (k, t) in tet.iter().enumerate() {
            tops.push(t.iter().map(|&x| base[x]).collect());
            signs.push(if k % 2 == 0 { 1 } else { -1 });
        }
    }
    OrientedComplex::new("pinched", labels(7), tops, Some(signs), Ordering::Total).expect("valid complex")
}

/// `C_n -> C_{n/d}`, `v -> v mod (n/d)`, of degree `d`.
pub fn circle_map(n: usize, d: usize) -> SimplicialMapData {
    assert!(d > 0 && n.is_multiple_of(d) && n / d >= 3, "degree {d} does not divide {n} into a circle");
    let (src, dst) = (Arc::new(circle(n)), Arc::new(circle(n / d)));
    SimplicialMapData::new(format!("z^{d}"), src, dst, (0..n).map(|v| v % (n / d)).collect()).expect("simplicial")
}

/// Maps `C_{3(a+b)} -> C_3` of degrees `a` and `b`: `f` winds on the first
/// `3a` edges and is constant afterwards, `g` is constant there and winds `b`
/// times on the rest.
pub fn circle_pair(a: usize, b: usize) -> (SimplicialMapData, SimplicialMapData) {
    let n = 3 * (a + b);
    assert!(n >= 3, "circle pair needs a + b > 0");
    let (src, dst) = (Arc::new(circle(n)), Arc::new(circle(3)));
    let f = (0..n).map(|v| v.min(3 * a) % 3).collect();
    let g = (0..n).map(|v| v.saturating_sub(3 * a) % 3).collect();
    (
        SimplicialMapData::new(format!("f{a}"), src.clone(), dst.clone(), f).expect("simplicial"),
        SimplicialMapData::new(format!("g{b}"), src, dst, g).expect("simplicial"),
    )
}

/// `ΣK -> ΣL` fixing the two apexes.
pub fn suspension_map(f: &SimplicialMapData) -> SimplicialMapData {
    let (n, l) = (f.domain().num_vertices(), f.codomain().num_vertices());
    let mut vm = f.vertex_map().to_vec();
    vm.extend([l, l + 1]);
    debug_assert_eq!(vm.len(), n + 2);
    SimplicialMapData::new(
        format!("S{}", f.name()),
        Arc::new(suspension(f.domain())),
        Arc::new(suspension(f.codomain())),
        vm,
    )
    .expect("suspension of a simplicial map is simplicial")
}

/// `C_{kn} -> C_n`, `v -> floor(v / k)`: degree one, constant on every other edge when `k = 2`.
pub fn circle_collapse(n: usize, k: usize) -> SimplicialMapData {
    let (src, dst) = (Arc::new(circle(k * n)), Arc::new(circle(n)));
    SimplicialMapData::new(format!("c{k}"), src, dst, (0..k * n).map(|v| v / k).collect()).expect("simplicial")
}

/// Degree-2 and degree-1 maps `S(C_6) -> S(C_3)`.
pub fn sphere_pair() -> (SimplicialMapData, SimplicialMapData) {
    (suspension_map(&circle_map(6, 2)).renamed("f"), suspension_map(&circle_collapse(3, 2)).renamed("g"))
}

/// Horizontal steps of the torus coordinate `x` on the `6 x 6` grid.
pub const TORUS_X_STEPS: [usize; 6] = [0, 1, 1, 1, 0, 0];
/// Vertical steps of the torus coordinate `y`.
pub const TORUS_Y_STEPS: [usize; 6] = [1, 0, 1, 0, 0, 1];

fn partial_sums(steps: &[usize]) -> Vec<usize> {
    steps.iter().scan(0, |acc, &s| {
        let v = *acc;
        *acc += s;
        Some(v)
    }).collect()
}

/// The `6 x 6` torus whose anti-diagonals make the torus maps order-compatible.
pub fn torus6() -> OrientedComplex {
    torus_grid_with(6, 6, |i, j| TORUS_X_STEPS[i] == 0 && TORUS_Y_STEPS[j] == 1)
}

/// `f1 = x`, `f2 = x + y` and `f3 = 2x + y` from `T^2` to `C_3`.
pub fn torus_maps() -> Vec<SimplicialMapData> {
    let t = Arc::new(torus6());
    let c3 = Arc::new(circle(3));
    let hx = partial_sums(&TORUS_X_STEPS);
    let hy = partial_sums(&TORUS_Y_STEPS);
    let build = |name: &str, value: &dyn Fn(usize, usize) -> usize| {
        let vm = (0..36).map(|v| value(v / 6, v % 6) % 3).collect();
        SimplicialMapData::new(name, t.clone(), c3.clone(), vm).expect("simplicial")
    };
    vec![
        build("x", &|i, _| hx[i]),
        build("x+y", &|i, j| hx[i] + hy[j]),
        build("2x+y", &|i, j| i + hy[j]),
    ]
}

/// `T^2 -> C_6`, `(i, j) -> i`, on the same torus.
pub fn torus_projection() -> SimplicialMapData {
    SimplicialMapData::new("pr", Arc::new(torus6()), Arc::new(circle(6)), (0..36).map(|v| v / 6).collect())
        .expect("simplicial")
}

/// `C_n` realized as a convex polygon, with the standard atlas.
pub fn circle_target(n: usize) -> Arc<PLTarget> {
    Arc::new(PLTarget::with_standard_atlas(Arc::new(circle(n)), polygon_points(n)).expect("polygon charts"))
}

/// The octahedron at `±e_i`, with the standard atlas.
pub fn octahedron_target() -> Arc<PLTarget> {
    Arc::new(PLTarget::with_standard_atlas(Arc::new(octahedron()), octahedron_points()).expect("octahedron charts"))
}

/// `S(C_n)` realized as a bipyramid over the polygon.
pub fn suspension_target(n: usize) -> Arc<PLTarget> {
    Arc::new(
        PLTarget::with_standard_atlas(Arc::new(suspension(&circle(n))), suspension_points(&polygon_points(n)))
            .expect("bipyramid charts"),
    )
}

/// Maps `S(C_12) -> S^2_oct` of degrees `a` and `b` (at most 3) with isolated
/// coincidences. `f` wraps the equator onto the `xy`-circle `a` times, `g`
/// wraps it onto the `yz`-circle `b` times, starting where `f` stops, after
/// the cyclic axis rotation `x -> y -> z -> x`.
pub fn sphere_pair_isolated(a: usize, b: usize) -> (SimplicialMapData, SimplicialMapData) {
    assert!((1..=3).contains(&a) && (1..=3).contains(&b), "degrees must lie in 1..=3");
    let dom = Arc::new(suspension(&circle(12)));
    let oct = Arc::new(octahedron());
    const EQUATOR: [usize; 4] = [0, 2, 1, 3];
    const ROTATE: [usize; 6] = [2, 3, 4, 5, 0, 1];
    let wrap = |d: usize, v: usize| EQUATOR[v.min(4 * d) % 4];
    let shift = 4 * a % 12;
    let f = (0..14).map(|v| if v < 12 { wrap(a, v) } else { 4 + v - 12 }).collect();
    let g = (0..14).map(|v| ROTATE[if v < 12 { wrap(b, (v + 12 - shift) % 12) } else { 4 + v - 12 }]).collect();
    (
        SimplicialMapData::new(format!("f{a}"), dom.clone(), oct.clone(), f).expect("simplicial"),
        SimplicialMapData::new(format!("g{b}"), dom, oct, g).expect("simplicial"),
    )
}
