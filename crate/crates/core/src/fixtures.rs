//! Small reference complexes with exact rational coordinates.

use crate::scalar::rational;
use crate::simplicial::{SimplicialComplex, Vertex};

fn vertex(id: u32, coords: &[(i64, i64)]) -> Vertex {
    Vertex { id, coords: coords.iter().map(|&(n, d)| rational(n, d)).collect() }
}

/// Six points on the unit circle at rational positions close to the regular hexagon
/// (the regular one needs √3), joined cyclically; edge `i` is `{i, i+1 mod 6}`.
pub fn hexagon() -> SimplicialComplex {
    hexagon_at(0, 0)
}

fn hexagon_points(offset: i64) -> Vec<[(i64, i64); 2]> {
    vec![
        [(1 + offset, 1), (0, 1)],
        [(33 + 65 * offset, 65), (56, 65)],
        [(-33 + 65 * offset, 65), (56, 65)],
        [(-1 + offset, 1), (0, 1)],
        [(-33 + 65 * offset, 65), (-56, 65)],
        [(33 + 65 * offset, 65), (-56, 65)],
    ]
}

fn hexagon_at(id_base: u32, offset: i64) -> SimplicialComplex {
    let vertices = hexagon_points(offset).iter().enumerate().map(|(i, c)| vertex(id_base + i as u32, c)).collect();
    let edges = (0..6).map(|i| (id_base + i, vec![id_base + i, id_base + (i + 1) % 6])).collect();
    SimplicialComplex::new(1, vertices, edges).expect("hexagon is valid")
}

/// Two hexagons ten units apart; ids 0..6 and 6..12.
pub fn two_hexagons() -> SimplicialComplex {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (base, offset) in [(0u32, 0i64), (6, 10)] {
        vertices.extend(hexagon_points(offset).iter().enumerate().map(|(i, c)| vertex(base + i as u32, c)));
        edges.extend((0..6).map(|i| (base + i, vec![base + i, base + (i + 1) % 6])));
    }
    SimplicialComplex::new(1, vertices, edges).expect("two hexagons are valid")
}

/// Boundary of the cross-polytope in R³: six axis points, eight triangles.
pub fn octahedron() -> SimplicialComplex {
    let vertices = vec![
        vertex(0, &[(1, 1), (0, 1), (0, 1)]),
        vertex(1, &[(-1, 1), (0, 1), (0, 1)]),
        vertex(2, &[(0, 1), (1, 1), (0, 1)]),
        vertex(3, &[(0, 1), (-1, 1), (0, 1)]),
        vertex(4, &[(0, 1), (0, 1), (1, 1)]),
        vertex(5, &[(0, 1), (0, 1), (-1, 1)]),
    ];
    let mut faces = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                faces.push((faces.len() as u32, vec![x, y, z]));
            }
        }
    }
    SimplicialComplex::new(2, vertices, faces).expect("octahedron is valid")
}

/// A single filled 2-simplex.
pub fn triangle() -> SimplicialComplex {
    let vertices = vec![vertex(0, &[(0, 1), (0, 1)]), vertex(1, &[(1, 1), (0, 1)]), vertex(2, &[(0, 1), (1, 1)])];
    SimplicialComplex::new(2, vertices, vec![(0, vec![0, 1, 2])]).expect("triangle is valid")
}

/// Two disjoint triangle boundaries (three edges each), ten units apart.
pub fn two_triangles() -> SimplicialComplex {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (base, offset) in [(0u32, 0i64), (3, 10)] {
        vertices.push(vertex(base, &[(offset, 1), (0, 1)]));
        vertices.push(vertex(base + 1, &[(offset + 1, 1), (0, 1)]));
        vertices.push(vertex(base + 2, &[(offset, 1), (1, 1)]));
        edges.extend((0..3).map(|i| (base + i, vec![base + i, base + (i + 1) % 3])));
    }
    SimplicialComplex::new(1, vertices, edges).expect("two triangles are valid")
}

/// Looks up a fixture by name.
pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    match name {
        "hexagon" => Some(hexagon()),
        "two-hexagons" => Some(two_hexagons()),
        "octahedron" => Some(octahedron()),
        "triangle" => Some(triangle()),
        "two-triangles" => Some(two_triangles()),
        _ => None,
    }
}

pub const NAMES: [&str; 5] = ["hexagon", "two-hexagons", "octahedron", "triangle", "two-triangles"];

