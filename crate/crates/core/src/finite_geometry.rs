//! Linear and projective geometry over prime fields, by exhaustive and exact
//! means.
//!
//! * [`enumerate_subspaces`] — every k-dimensional subspace of V(n, q) as a
//!   reduced-row-echelon basis, in a deterministic order.
//! * [`build_lattice`] — the full subspace lattice with its covering
//!   relation (the Hasse diagram), graded by dimension.
//! * [`projective_space`] — PG(n, q) with points, lines, and their incidence.
//! * [`duality_check`] — verifies that a projective plane satisfies the same
//!   axioms after swapping points and lines, and exhibits the orthogonal
//!   complement correlation as an explicit witness.
//!
//! Vectors print in the compact coordinate-string form `"abc"`, leftmost
//! character first coordinate, so `(0,1,0)` over GF(2) prints as `010`.
//!
//! Hard caps (ambient dimension at most 6 for enumeration, 5 for the
//! lattice, plus a total-count guard) keep every exhaustive run cheap.

use crate::qcalc;
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

/// Largest ambient dimension accepted by [`enumerate_subspaces`].
pub const MAX_ENUM_DIM: usize = 6;
/// Largest ambient dimension accepted by [`build_lattice`].
pub const MAX_LATTICE_DIM: usize = 5;
/// Largest number of subspaces a single enumeration may produce.
const MAX_ENUM_COUNT: u64 = 5_000_000;

/// Errors for the finite-geometry operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    /// q is not a prime number (composite, 0, or 1).
    CompositeModulus { q: u64 },
    /// Ambient dimension beyond the exhaustive-enumeration cap.
    DimensionTooLarge { n: usize, max: usize },
    /// Requested subspace dimension k exceeds the ambient dimension.
    SubspaceDimOutOfRange { k: usize, n: usize },
    /// The enumeration would produce too many subspaces to hold.
    EnumerationTooLarge { count: String, max: u64 },
    /// A coordinate was not reduced mod q.
    CoordinateOutOfField { value: u64, q: u64 },
    /// Vectors over different fields were combined.
    MixedFields { left: u64, right: u64 },
    /// The operation needs a projective plane (projective dimension 2).
    NotAPlane { dim: usize },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::CompositeModulus { q } => write!(f, "q = {q} is not prime"),
            GeometryError::DimensionTooLarge { n, max } => {
                write!(f, "ambient dimension {n} exceeds the cap of {max}")
            }
            GeometryError::SubspaceDimOutOfRange { k, n } => {
                write!(f, "subspace dimension {k} out of range for ambient dimension {n}")
            }
            GeometryError::EnumerationTooLarge { count, max } => {
                write!(f, "{count} subspaces exceed the enumeration cap of {max}")
            }
            GeometryError::CoordinateOutOfField { value, q } => {
                write!(f, "coordinate {value} is not reduced mod {q}")
            }
            GeometryError::MixedFields { left, right } => {
                write!(f, "cannot combine vectors over GF({left}) and GF({right})")
            }
            GeometryError::NotAPlane { dim } => {
                write!(f, "expected a projective plane, got projective dimension {dim}")
            }
        }
    }
}

impl std::error::Error for GeometryError {}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(q: u64) -> Result<(), GeometryError> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(GeometryError::CompositeModulus { q })
    }
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Multiplicative inverse mod prime q by Fermat/extended Euclid.
fn inv_mod(a: u64, q: u64) -> u64 {
    // Extended Euclid on (a, q); q prime and a nonzero mod q.
    debug_assert!(a % q != 0);
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    debug_assert_eq!(r0, 1);
    (s0.rem_euclid(q as i128)) as u64
}

/// A vector over the prime field GF(q), coordinates reduced mod q.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GfVector {
    q: u64,
    coords: Vec<u64>,
}

impl GfVector {
    pub fn new(q: u64, coords: Vec<u64>) -> Result<Self, GeometryError> {
        check_prime(q)?;
        for &c in &coords {
            if c >= q {
                return Err(GeometryError::CoordinateOutOfField { value: c, q });
            }
        }
        Ok(GfVector { q, coords })
    }

    pub fn zero(q: u64, len: usize) -> Result<Self, GeometryError> {
        GfVector::new(q, vec![0; len])
    }

    pub fn field(&self) -> u64 {
        self.q
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Coordinatewise sum mod q.  Panics on mismatched fields or lengths;
    /// those are programming errors, not data errors.
    pub fn add(&self, other: &GfVector) -> GfVector {
        assert_eq!(self.q, other.q, "mixed fields");
        assert_eq!(self.coords.len(), other.coords.len(), "mixed lengths");
        GfVector {
            q: self.q,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % self.q)
                .collect(),
        }
    }

    /// Scalar multiple mod q.
    pub fn scale(&self, c: u64) -> GfVector {
        GfVector {
            q: self.q,
            coords: self
                .coords
                .iter()
                .map(|&a| mul_mod(a, c % self.q, self.q))
                .collect(),
        }
    }

    /// The standard dot product mod q.
    pub fn dot(&self, other: &GfVector) -> u64 {
        assert_eq!(self.q, other.q, "mixed fields");
        assert_eq!(self.coords.len(), other.coords.len(), "mixed lengths");
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, self.q)) % self.q)
    }
}

impl fmt::Display for GfVector {
    /// Coordinate-string form: `"010"` for (0,1,0); leftmost character is the
    /// first coordinate.  Fields up to GF(7) (all we enumerate) are single
    /// digits; larger fields fall back to comma separation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for c in &self.coords {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Reduced row echelon form over GF(q): pivots are 1, pivot columns are
/// otherwise zero, pivot positions strictly increase, zero rows dropped.
fn rref(q: u64, width: usize, mut mat: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(r) = (pivot_row..mat.len()).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(pivot_row, r);
        let inv = inv_mod(mat[pivot_row][col], q);
        for c in col..width {
            mat[pivot_row][c] = mul_mod(mat[pivot_row][c], inv, q);
        }
        for r2 in 0..mat.len() {
            if r2 != pivot_row && mat[r2][col] != 0 {
                let factor = mat[r2][col];
                for c in col..width {
                    let sub = mul_mod(factor, mat[pivot_row][c], q);
                    mat[r2][c] = (mat[r2][c] + q - sub) % q;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == mat.len() {
            break;
        }
    }
    mat.retain(|row| row.iter().any(|&c| c != 0));
    mat
}

/// A subspace of V(n, q), canonically represented by its reduced
/// row-echelon basis.  Two `Subspace` values are equal exactly when they
/// describe the same subspace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    q: u64,
    ambient: usize,
    basis: Vec<GfVector>,
}

impl Subspace {
    /// The zero subspace (empty basis).
    pub fn zero(q: u64, ambient: usize) -> Result<Self, GeometryError> {
        check_prime(q)?;
        Ok(Subspace {
            q,
            ambient,
            basis: Vec::new(),
        })
    }

    /// Builds the span of the given vectors, reducing to the canonical RREF
    /// basis.
    pub fn from_spanning(
        q: u64,
        ambient: usize,
        vectors: &[GfVector],
    ) -> Result<Self, GeometryError> {
        check_prime(q)?;
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.field() != q {
                return Err(GeometryError::MixedFields {
                    left: q,
                    right: v.field(),
                });
            }
            assert_eq!(v.len(), ambient, "vector length differs from ambient");
            rows.push(v.coords().to_vec());
        }
        let reduced = rref(q, ambient, rows);
        let basis = reduced
            .into_iter()
            .map(|coords| GfVector { q, coords })
            .collect();
        Ok(Subspace { q, ambient, basis })
    }

    pub fn field(&self) -> u64 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical RREF basis rows.
    pub fn basis(&self) -> &[GfVector] {
        &self.basis
    }

    /// Membership test by reducing `v` against the RREF basis.
    pub fn contains(&self, v: &GfVector) -> bool {
        assert_eq!(v.field(), self.q, "mixed fields");
        assert_eq!(v.len(), self.ambient, "mixed lengths");
        let mut work = v.coords().to_vec();
        for row in &self.basis {
            let pivot = row.coords().iter().position(|&c| c != 0).unwrap();
            if work[pivot] != 0 {
                let factor = work[pivot];
                for c in pivot..self.ambient {
                    let sub = mul_mod(factor, row.coords()[c], self.q);
                    work[c] = (work[c] + self.q - sub) % self.q;
                }
            }
        }
        work.iter().all(|&c| c == 0)
    }

    /// True when every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// All q^dim points of the subspace, sorted.
    pub fn points(&self) -> Vec<GfVector> {
        let k = self.dim();
        let mut out = Vec::new();
        let mut coeffs = vec![0u64; k];
        loop {
            let mut v = GfVector {
                q: self.q,
                coords: vec![0; self.ambient],
            };
            for (c, row) in coeffs.iter().zip(&self.basis) {
                v = v.add(&row.scale(*c));
            }
            out.push(v);
            // Increment the mixed-radix counter.
            let mut i = 0;
            while i < k {
                coeffs[i] += 1;
                if coeffs[i] < self.q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        out.sort();
        out
    }

    /// The points as sorted coordinate strings.
    pub fn point_strings(&self) -> Vec<String> {
        self.points().iter().map(GfVector::to_string).collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "[0]");
        }
        let rows: Vec<String> = self.basis.iter().map(GfVector::to_string).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Enumerates every k-dimensional subspace of V(n, q) in a deterministic
/// order (ascending by the flattened RREF basis matrix).
///
/// The enumeration generates reduced row-echelon bases directly — one per
/// subspace — by choosing pivot columns and filling the free cells, so no
/// deduplication is ever needed.
pub fn enumerate_subspaces(n: usize, q: u64, k: usize) -> Result<Vec<Subspace>, GeometryError> {
    check_prime(q)?;
    if n > MAX_ENUM_DIM {
        return Err(GeometryError::DimensionTooLarge {
            n,
            max: MAX_ENUM_DIM,
        });
    }
    if k > n {
        return Err(GeometryError::SubspaceDimOutOfRange { k, n });
    }
    if q > u32::MAX as u64 {
        return Err(GeometryError::EnumerationTooLarge {
            count: format!(">GF({q}) enumeration"),
            max: MAX_ENUM_COUNT,
        });
    }
    let count = qcalc::gaussian_binomial(n as u32, k as i64, q as i64)
        .expect("q validated prime, hence positive");
    if count > BigUint::from(MAX_ENUM_COUNT) {
        return Err(GeometryError::EnumerationTooLarge {
            count: count.to_string(),
            max: MAX_ENUM_COUNT,
        });
    }

    let mut out: Vec<Subspace> = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free cells of the echelon pattern: entries right of the row's pivot
        // that do not sit in a pivot column.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in (p + 1)..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut filling = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &val) in free.iter().zip(&filling) {
                rows[r][c] = val;
            }
            let basis = rows
                .into_iter()
                .map(|coords| GfVector { q, coords })
                .collect();
            out.push(Subspace {
                q,
                ambient: n,
                basis,
            });
            // Next filling (mixed radix, last cell fastest).
            let mut i = free.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                filling[i] += 1;
                if filling[i] < q {
                    break;
                }
                filling[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if free.is_empty() || i == usize::MAX {
                break;
            }
        }
        // Next pivot-column combination in lexicographic order.
        if k == 0 {
            break;
        }
        let mut i = k;
        loop {
            if i == 0 {
                i = usize::MAX;
                break;
            }
            i -= 1;
            if pivots[i] + 1 <= n - (k - i) {
                pivots[i] += 1;
                for j in (i + 1)..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        if i == usize::MAX {
            break;
        }
    }
    out.sort();
    debug_assert_eq!(BigUint::from(out.len() as u64), count);
    Ok(out)
}

/// The subspace lattice of V(n, q): all subspaces graded by dimension plus
/// the covering relation of inclusion (a k-space covered by the
/// (k+1)-spaces containing it).
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    q: u64,
    ambient: usize,
    /// `levels[k]` lists the k-dimensional subspaces in enumeration order.
    levels: Vec<Vec<Subspace>>,
    /// Flat node ids: level k starts at `offsets[k]`.
    offsets: Vec<usize>,
    /// Covering pairs (lower, upper) of flat node ids, lower dim + 1 = upper dim.
    covers: Vec<(usize, usize)>,
}

impl SubspaceLattice {
    pub fn field(&self) -> u64 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn level(&self, k: usize) -> &[Subspace] {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Vec<Subspace>] {
        &self.levels
    }

    /// The subspace at a flat node id.
    pub fn node(&self, id: usize) -> &Subspace {
        let k = self.dim_of(id);
        &self.levels[k][id - self.offsets[k]]
    }

    /// Dimension of the subspace at a flat node id.
    pub fn dim_of(&self, id: usize) -> usize {
        let mut k = 0;
        while k + 1 < self.offsets.len() && self.offsets[k + 1] <= id {
            k += 1;
        }
        k
    }

    /// Flat node id of the first node at level k.
    pub fn level_offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Hasse diagram in DOT syntax, ranked by dimension.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (id, sub) in self.levels.iter().flatten().enumerate() {
            let _ = writeln!(s, "  n{id} [label=\"{sub}\"];");
        }
        for (k, level) in self.levels.iter().enumerate() {
            let ids: Vec<String> = (0..level.len())
                .map(|i| format!("n{}", self.offsets[k] + i))
                .collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join(" "));
        }
        for &(lo, hi) in &self.covers {
            let _ = writeln!(s, "  n{lo} -> n{hi};");
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering: levels of basis-string arrays plus cover pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        serde_json::Value::Array(
                            s.basis()
                                .iter()
                                .map(|v| serde_json::Value::String(v.to_string()))
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({
            "q": self.q,
            "ambient_dim": self.ambient,
            "node_count": self.node_count(),
            "levels": levels,
            "covers": self.covers.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        })
    }
}

/// Builds the full subspace lattice of V(n, q).  Capped at n <= 5.
pub fn build_lattice(n: usize, q: u64) -> Result<SubspaceLattice, GeometryError> {
    check_prime(q)?;
    if n > MAX_LATTICE_DIM {
        return Err(GeometryError::DimensionTooLarge {
            n,
            max: MAX_LATTICE_DIM,
        });
    }
    let mut levels = Vec::with_capacity(n + 1);
    for k in 0..=n {
        levels.push(enumerate_subspaces(n, q, k)?);
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for level in &levels {
        offsets.push(acc);
        acc += level.len();
    }
    let mut covers = Vec::new();
    for k in 0..n {
        for (i, lower) in levels[k].iter().enumerate() {
            for (j, upper) in levels[k + 1].iter().enumerate() {
                if lower.is_subspace_of(upper) {
                    covers.push((offsets[k] + i, offsets[k + 1] + j));
                }
            }
        }
    }
    Ok(SubspaceLattice {
        q,
        ambient: n,
        levels,
        offsets,
        covers,
    })
}

/// The projective space PG(dim, q): points are the 1-dimensional and lines
/// the 2-dimensional subspaces of V(dim+1, q), with containment incidence.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    q: u64,
    dim: usize,
    points: Vec<Subspace>,
    lines: Vec<Subspace>,
    /// Sorted (point index, line index) containment pairs.
    incidence: Vec<(usize, usize)>,
}

impl ProjectiveSpace {
    pub fn field(&self) -> u64 {
        self.q
    }

    /// Projective dimension (2 for a plane).
    pub fn projective_dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn incidence(&self) -> &[(usize, usize)] {
        &self.incidence
    }

    /// Canonical label of a point: the coordinate string of its RREF
    /// generator.
    pub fn point_label(&self, idx: usize) -> String {
        self.points[idx].basis()[0].to_string()
    }

    /// Point indices on a line, ascending.
    pub fn line_points(&self, line: usize) -> Vec<usize> {
        self.incidence
            .iter()
            .filter(|&&(_, l)| l == line)
            .map(|&(p, _)| p)
            .collect()
    }

    /// Line indices through a point, ascending.
    pub fn point_lines(&self, point: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .incidence
            .iter()
            .filter(|&&(p, _)| p == point)
            .map(|&(_, l)| l)
            .collect();
        out.sort_unstable();
        out
    }

    /// Every line as its sorted list of point labels.
    pub fn line_point_strings(&self) -> Vec<Vec<String>> {
        (0..self.lines.len())
            .map(|l| {
                let mut pts: Vec<String> = self
                    .line_points(l)
                    .iter()
                    .map(|&p| self.point_label(p))
                    .collect();
                pts.sort();
                pts
            })
            .collect()
    }

    /// Bipartite point/line incidence graph in DOT syntax.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str("graph incidence {\n  node [shape=circle];\n");
        for (i, _) in self.points.iter().enumerate() {
            let _ = writeln!(s, "  p{i} [label=\"{}\"];", self.point_label(i));
        }
        for (l, _) in self.lines.iter().enumerate() {
            let _ = writeln!(s, "  l{l} [label=\"L{}\" shape=box];", l + 1);
        }
        for &(p, l) in &self.incidence {
            let _ = writeln!(s, "  p{p} -- l{l};");
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering: point labels plus lines as sorted point-label arrays.
    pub fn to_json(&self) -> serde_json::Value {
        let points: Vec<String> = (0..self.points.len()).map(|i| self.point_label(i)).collect();
        let mut lines = self.line_point_strings();
        lines.sort();
        serde_json::json!({
            "q": self.q,
            "projective_dim": self.dim,
            "point_count": self.points.len(),
            "line_count": self.lines.len(),
            "points": points,
            "lines": lines,
        })
    }
}

/// Builds PG(dim, q).  The underlying vector dimension dim+1 obeys the
/// lattice cap, so dim <= 4.
pub fn projective_space(dim: usize, q: u64) -> Result<ProjectiveSpace, GeometryError> {
    check_prime(q)?;
    if dim < 1 || dim + 1 > MAX_LATTICE_DIM {
        return Err(GeometryError::DimensionTooLarge {
            n: dim,
            max: MAX_LATTICE_DIM - 1,
        });
    }
    let points = enumerate_subspaces(dim + 1, q, 1)?;
    let lines = enumerate_subspaces(dim + 1, q, 2)?;
    let mut incidence = Vec::new();
    for (p, point) in points.iter().enumerate() {
        for (l, line) in lines.iter().enumerate() {
            if point.is_subspace_of(line) {
                incidence.push((p, l));
            }
        }
    }
    Ok(ProjectiveSpace {
        q,
        dim,
        points,
        lines,
        incidence,
    })
}

/// The projective-plane axioms, checked exhaustively on an abstract
/// point/line incidence structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneAxiomReport {
    /// Exactly q^2 + q + 1 points.
    pub point_count_ok: bool,
    /// Exactly q^2 + q + 1 lines.
    pub line_count_ok: bool,
    /// Every line carries exactly q + 1 points.
    pub points_per_line_ok: bool,
    /// Every point lies on exactly q + 1 lines.
    pub lines_per_point_ok: bool,
    /// Any two distinct points lie on exactly one common line.
    pub unique_line_through_point_pairs: bool,
    /// Any two distinct lines meet in exactly one point.
    pub unique_point_on_line_pairs: bool,
}

impl PlaneAxiomReport {
    pub fn all_hold(&self) -> bool {
        self.point_count_ok
            && self.line_count_ok
            && self.points_per_line_ok
            && self.lines_per_point_ok
            && self.unique_line_through_point_pairs
            && self.unique_point_on_line_pairs
    }
}

/// Axioms on an abstract incidence structure: `lines[l]` is the set of point
/// indices on line l, points are 0..point_count.
fn axioms_on_incidence(q: u64, point_count: usize, lines: &[Vec<usize>]) -> PlaneAxiomReport {
    let order = q as usize;
    let expected_count = order * order + order + 1;
    let point_count_ok = point_count == expected_count;
    let line_count_ok = lines.len() == expected_count;
    let points_per_line_ok = lines.iter().all(|pts| pts.len() == order + 1);
    let mut lines_per_point = vec![0usize; point_count];
    for pts in lines {
        for &p in pts {
            lines_per_point[p] += 1;
        }
    }
    let lines_per_point_ok = lines_per_point.iter().all(|&c| c == order + 1);
    // Pair axioms by exhaustive counting.
    let mut unique_line = true;
    'pts: for a in 0..point_count {
        for b in (a + 1)..point_count {
            let joint = lines
                .iter()
                .filter(|pts| pts.contains(&a) && pts.contains(&b))
                .count();
            if joint != 1 {
                unique_line = false;
                break 'pts;
            }
        }
    }
    let mut unique_point = true;
    'lns: for a in 0..lines.len() {
        for b in (a + 1)..lines.len() {
            let meet = lines[a].iter().filter(|p| lines[b].contains(p)).count();
            if meet != 1 {
                unique_point = false;
                break 'lns;
            }
        }
    }
    PlaneAxiomReport {
        point_count_ok,
        line_count_ok,
        points_per_line_ok,
        lines_per_point_ok,
        unique_line_through_point_pairs: unique_line,
        unique_point_on_line_pairs: unique_point,
    }
}

/// Runs the projective-plane axioms on PG(2, q) as built.
pub fn check_plane_axioms(ps: &ProjectiveSpace) -> Result<PlaneAxiomReport, GeometryError> {
    if ps.projective_dim() != 2 {
        return Err(GeometryError::NotAPlane {
            dim: ps.projective_dim(),
        });
    }
    let lines: Vec<Vec<usize>> = (0..ps.lines().len()).map(|l| ps.line_points(l)).collect();
    Ok(axioms_on_incidence(ps.field(), ps.points().len(), &lines))
}

/// Outcome of [`duality_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// True when the dual structure (points and lines swapped) satisfies all
    /// plane axioms and the orthogonal-complement correlation verifies.
    pub is_self_dual_plane: bool,
    /// Axioms of the dual incidence structure.
    pub dual_axioms: PlaneAxiomReport,
    /// Witness correlation: `point_to_line[p]` is the line index of the
    /// orthogonal complement of point p.
    pub point_to_line: Vec<usize>,
    /// Witness correlation the other way: `line_to_point[l]` is the point
    /// index of the orthogonal complement of line l.
    pub line_to_point: Vec<usize>,
}

/// Checks self-duality of a projective plane: the dual incidence (roles of
/// points and lines swapped) satisfies the same axioms, witnessed by the
/// orthogonal-complement correlation p -> p^perp, which is verified to be a
/// bijection that reverses incidence.
pub fn duality_check(ps: &ProjectiveSpace) -> Result<DualityReport, GeometryError> {
    if ps.projective_dim() != 2 {
        return Err(GeometryError::NotAPlane {
            dim: ps.projective_dim(),
        });
    }
    let q = ps.field();
    let ambient = 3;
    // Dual structure: one "dual line" per original point, carrying the
    // original lines through that point as its "dual points".
    let pencils: Vec<Vec<usize>> = (0..ps.points().len())
        .map(|p| ps.point_lines(p))
        .collect();
    let dual_axioms = axioms_on_incidence(q, ps.lines().len(), &pencils);

    // Orthogonal-complement correlation.
    let mut line_index: BTreeMap<&Subspace, usize> = BTreeMap::new();
    for (l, line) in ps.lines().iter().enumerate() {
        line_index.insert(line, l);
    }
    let mut point_index: BTreeMap<&Subspace, usize> = BTreeMap::new();
    for (p, point) in ps.points().iter().enumerate() {
        point_index.insert(point, p);
    }
    // All vectors of V(3, q) for null-space collection.
    let mut all_vectors = Vec::new();
    let mut coords = vec![0u64; ambient];
    loop {
        all_vectors.push(GfVector {
            q,
            coords: coords.clone(),
        });
        let mut i = 0;
        while i < ambient {
            coords[i] += 1;
            if coords[i] < q {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == ambient {
            break;
        }
    }

    let perp_of = |vectors: &[GfVector]| -> Vec<GfVector> {
        all_vectors
            .iter()
            .filter(|w| vectors.iter().all(|v| v.dot(w) == 0))
            .cloned()
            .collect()
    };

    let mut point_to_line = Vec::with_capacity(ps.points().len());
    for point in ps.points() {
        let null = perp_of(point.basis());
        let sub = Subspace::from_spanning(q, ambient, &null)?;
        point_to_line.push(*line_index.get(&sub).expect("complement is a line"));
    }
    let mut line_to_point = Vec::with_capacity(ps.lines().len());
    for line in ps.lines() {
        let null = perp_of(line.basis());
        let sub = Subspace::from_spanning(q, ambient, &null)?;
        line_to_point.push(*point_index.get(&sub).expect("complement is a point"));
    }

    // The correlation must be bijective and incidence-reversing:
    // p on L  <=>  L^perp on p^perp.
    let mut seen = vec![false; point_to_line.len()];
    let mut bijective = true;
    for &l in &point_to_line {
        if seen[l] {
            bijective = false;
        }
        seen[l] = true;
    }
    let on = |p: usize, l: usize| ps.incidence().binary_search(&(p, l)).is_ok();
    let mut reversing = true;
    'outer: for p in 0..ps.points().len() {
        for l in 0..ps.lines().len() {
            if on(p, l) != on(line_to_point[l], point_to_line[p]) {
                reversing = false;
                break 'outer;
            }
        }
    }

    Ok(DualityReport {
        is_self_dual_plane: dual_axioms.all_hold() && bijective && reversing,
        dual_axioms,
        point_to_line,
        line_to_point,
    })
}

/// JSON rendering of a subspace list: an array of sorted point-string
/// arrays, one per subspace.
pub fn subspaces_to_json(subs: &[Subspace]) -> serde_json::Value {
    serde_json::Value::Array(
        subs.iter()
            .map(|s| {
                serde_json::Value::Array(
                    s.point_strings()
                        .into_iter()
                        .map(serde_json::Value::String)
                        .collect(),
                )
            })
            .collect(),
    )
}
