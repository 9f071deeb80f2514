//! Static facet lists for the built-in triangulations.
//!
//! None of these is trusted: every entry is re-validated by the invariant
//! suite at test time (face counts, Euler characteristic, Betti numbers,
//! duality, orientation, characteristic classes).

/// Minimal 6-vertex triangulation of the real projective plane: the
/// antipodal quotient of the icosahedron. All 15 edges of K6 appear;
/// 10 triangles, Euler characteristic 1.
pub const RP2_FACETS: [[u32; 3]; 10] = [
    [0, 1, 3],
    [0, 1, 4],
    [0, 2, 3],
    [0, 2, 5],
    [0, 4, 5],
    [1, 2, 4],
    [1, 2, 5],
    [1, 3, 5],
    [2, 3, 4],
    [3, 4, 5],
];

/// 9-vertex Klein bottle: the 3x3 grid with staircase diagonals, wrapped
/// horizontally and glued vertically with a column reflection.
pub const KLEIN_FACETS: [[u32; 3]; 18] = [
    [0, 3, 4],
    [0, 1, 4],
    [1, 4, 5],
    [1, 2, 5],
    [2, 3, 5],
    [0, 2, 3],
    [3, 6, 7],
    [3, 4, 7],
    [4, 7, 8],
    [4, 5, 8],
    [5, 6, 8],
    [3, 5, 6],
    [0, 2, 6],
    [2, 6, 7],
    [1, 2, 7],
    [1, 7, 8],
    [0, 1, 8],
    [0, 6, 8],
];

/// Orientable genus-2 surface: two 9-vertex grid tori, each with the facet
/// {0,3,4} removed, glued along the exposed boundary triangle (vertices
/// 0, 3, 4 shared; the second torus's remaining vertices relabeled 9..14).
/// 15 vertices, 51 edges, 34 triangles, Euler characteristic -2.
pub const GENUS2_FACETS: [[u32; 3]; 34] = [
    [0, 1, 4],
    [1, 4, 5],
    [1, 2, 5],
    [2, 3, 5],
    [0, 2, 3],
    [3, 6, 7],
    [3, 4, 7],
    [4, 7, 8],
    [4, 5, 8],
    [5, 6, 8],
    [3, 5, 6],
    [0, 1, 6],
    [1, 6, 7],
    [1, 2, 7],
    [2, 7, 8],
    [0, 2, 8],
    [0, 6, 8],
    [0, 4, 9],
    [4, 9, 11],
    [9, 10, 11],
    [3, 10, 11],
    [0, 3, 10],
    [3, 12, 13],
    [3, 4, 13],
    [4, 13, 14],
    [4, 11, 14],
    [11, 12, 14],
    [3, 11, 12],
    [0, 9, 12],
    [9, 12, 13],
    [9, 10, 13],
    [10, 13, 14],
    [0, 10, 14],
    [0, 12, 14],
];

/// The 9-vertex complex projective plane: vertices are the 3x3 grid
/// Z3 x Z3 (id = 3r + c), facets invariant under the two grid translations.
/// f-vector (9, 36, 84, 90, 36), Euler characteristic 3; the unique
/// 9-vertex combinatorial manifold with these invariants.
pub const CP2_FACETS: [[u32; 5]; 36] = [
    [0, 1, 2, 3, 4],
    [0, 1, 2, 3, 5],
    [0, 1, 2, 4, 5],
    [0, 1, 3, 4, 6],
    [0, 1, 3, 5, 7],
    [0, 1, 3, 6, 7],
    [0, 1, 4, 5, 6],
    [0, 1, 5, 6, 8],
    [0, 1, 5, 7, 8],
    [0, 1, 6, 7, 8],
    [0, 2, 3, 4, 8],
    [0, 2, 3, 5, 8],
    [0, 2, 4, 5, 6],
    [0, 2, 4, 6, 7],
    [0, 2, 4, 7, 8],
    [0, 2, 5, 6, 8],
    [0, 2, 6, 7, 8],
    [0, 3, 4, 6, 7],
    [0, 3, 4, 7, 8],
    [0, 3, 5, 7, 8],
    [1, 2, 3, 4, 8],
    [1, 2, 3, 5, 7],
    [1, 2, 3, 6, 7],
    [1, 2, 3, 6, 8],
    [1, 2, 4, 5, 7],
    [1, 2, 4, 7, 8],
    [1, 2, 6, 7, 8],
    [1, 3, 4, 6, 8],
    [1, 4, 5, 6, 8],
    [1, 4, 5, 7, 8],
    [2, 3, 5, 6, 7],
    [2, 3, 5, 6, 8],
    [2, 4, 5, 6, 7],
    [3, 4, 5, 6, 7],
    [3, 4, 5, 6, 8],
    [3, 4, 5, 7, 8],
];
