//! Octonion multiplication tables coded by the Fano plane.
//!
//! The seven imaginary units e1..e7 are matched with the seven nonzero
//! vectors of GF(2)^3 (the points of the Fano plane); the seven lines of the
//! plane, each given a cyclic orientation, then determine every product of
//! imaginary units.  An oriented line `(a, b, c)` means
//!
//! ```text
//! ea * eb = ec,   eb * ec = ea,   ec * ea = eb,
//! ```
//!
//! with reversed-order products negated.  Together with `e0` as identity and
//! `ei^2 = -e0` this fills the whole 8 x 8 table.
//!
//! Not every orientation choice yields an octonion algebra: of the 2^7 = 128
//! assignments per labeling, exactly 16 produce a table on which the norm
//! composes and the algebra is alternative ([`orientation_sweep`]).  Tables
//! are checked *symbolically*: the norm residual and both alternator
//! polynomials are expanded over 16 indeterminate coordinates and must
//! vanish identically, so a passing table is proved, not sampled.
//!
//! Point strings use three characters, leftmost first: "110" is the vector
//! with first coordinate 1, second 1, third 0, i.e. the value 6 when read as
//! binary with the first coordinate most significant.

use crate::cayley_dickson::{unit_table, SignedUnit, UnitTable};
use crate::symbolic::Poly;
use std::collections::BTreeSet;
use std::fmt;

/// Errors for Fano-plane codings and table surgery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanoError {
    /// A point value outside 1..=7.
    InvalidPointValue { value: u8 },
    /// A point string that is not three binary digits with at least one 1.
    BadPointString { text: String },
    /// A labeling that repeats a point.
    NotABijection,
    /// A unit index outside 1..=7 where an imaginary unit is required.
    UnitOutOfRange { index: usize },
    /// A line with repeated units.
    DegenerateLine { a: usize, b: usize, c: usize },
    /// Three units whose points are not collinear, or a triple that is not a
    /// line of the table at hand.
    NotALine { a: usize, b: usize, c: usize },
    /// Seven lines that do not cover each pair of units exactly once.
    LinesDontCoverPlane,
    /// A unit table of the wrong level for an 8-dimensional coding.
    WrongLevel { level: usize },
    /// A table whose structure is too broken for the requested operation.
    InvalidTable { reason: String },
    /// A table entry that the JSON encoding cannot express.
    UnencodableEntry { row: usize, col: usize },
    /// Malformed JSON input.
    BadJson { reason: String },
}

impl fmt::Display for FanoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanoError::InvalidPointValue { value } => {
                write!(f, "point value {value} outside 1..=7")
            }
            FanoError::BadPointString { text } => {
                write!(f, "bad point string {text:?}: need three binary digits, not all zero")
            }
            FanoError::NotABijection => write!(f, "labeling repeats a point"),
            FanoError::UnitOutOfRange { index } => {
                write!(f, "unit index {index} outside 1..=7")
            }
            FanoError::DegenerateLine { a, b, c } => {
                write!(f, "line ({a}, {b}, {c}) repeats a unit")
            }
            FanoError::NotALine { a, b, c } => {
                write!(f, "units ({a}, {b}, {c}) do not form a line")
            }
            FanoError::LinesDontCoverPlane => {
                write!(f, "the seven lines do not cover each unit pair exactly once")
            }
            FanoError::WrongLevel { level } => {
                write!(f, "need a level-3 (8-dimensional) table, got level {level}")
            }
            FanoError::InvalidTable { reason } => write!(f, "invalid table: {reason}"),
            FanoError::UnencodableEntry { row, col } => {
                write!(f, "entry at ({row}, {col}) is not expressible in the JSON encoding")
            }
            FanoError::BadJson { reason } => write!(f, "bad table JSON: {reason}"),
        }
    }
}

impl std::error::Error for FanoError {}

/// A point of the Fano plane: a nonzero vector of GF(2)^3, stored as its
/// value 1..=7 with the first string coordinate as the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FanoPoint(u8);

impl FanoPoint {
    pub fn new(value: u8) -> Result<Self, FanoError> {
        if (1..=7).contains(&value) {
            Ok(FanoPoint(value))
        } else {
            Err(FanoError::InvalidPointValue { value })
        }
    }

    /// Parses a three-character binary string like "110" (leftmost character
    /// is the first coordinate).
    pub fn from_bits(text: &str) -> Result<Self, FanoError> {
        let bad = || FanoError::BadPointString {
            text: text.to_owned(),
        };
        if text.len() != 3 {
            return Err(bad());
        }
        let mut value = 0u8;
        for ch in text.chars() {
            value <<= 1;
            match ch {
                '0' => {}
                '1' => value |= 1,
                _ => return Err(bad()),
            }
        }
        FanoPoint::new(value).map_err(|_| bad())
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// The "abc" string form, first coordinate first.
    pub fn bits(self) -> String {
        format!("{:03b}", self.0)
    }

    /// GF(2) sum; `None` when the points coincide (the sum would be zero,
    /// which is not a point).
    pub fn xor(self, other: FanoPoint) -> Option<FanoPoint> {
        if self == other {
            None
        } else {
            Some(FanoPoint(self.0 ^ other.0))
        }
    }

    /// Three distinct points lie on a common line iff they sum to zero.
    pub fn collinear(a: FanoPoint, b: FanoPoint, c: FanoPoint) -> bool {
        a != b && b != c && a != c && (a.0 ^ b.0 ^ c.0) == 0
    }
}

impl fmt::Display for FanoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

/// The seven lines of the Fano plane as point triples, each sorted by value,
/// the lines sorted among themselves.
pub fn fano_lines() -> [[FanoPoint; 3]; 7] {
    let mut lines = Vec::with_capacity(7);
    for a in 1u8..=7 {
        for b in (a + 1)..=7 {
            let c = a ^ b;
            if c > b {
                lines.push([FanoPoint(a), FanoPoint(b), FanoPoint(c)]);
            }
        }
    }
    lines.sort();
    lines.try_into().expect("the Fano plane has seven lines")
}

/// A bijection from the imaginary units e1..e7 to the seven Fano points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitLabeling {
    // to_point[i - 1] is the point assigned to e_i.
    to_point: [FanoPoint; 7],
}

impl UnitLabeling {
    pub fn new(points: [FanoPoint; 7]) -> Result<Self, FanoError> {
        let distinct: BTreeSet<FanoPoint> = points.iter().copied().collect();
        if distinct.len() != 7 {
            return Err(FanoError::NotABijection);
        }
        Ok(UnitLabeling { to_point: points })
    }

    /// The classic assignment: e1 = 010, e2 = 100, e3 = 110, e4 = 001,
    /// e5 = 011, e6 = 101, e7 = 111.
    pub fn classic() -> Self {
        let values = [2u8, 4, 6, 1, 3, 5, 7];
        UnitLabeling {
            to_point: values.map(FanoPoint),
        }
    }

    pub fn point_of(&self, unit: usize) -> Result<FanoPoint, FanoError> {
        if (1..=7).contains(&unit) {
            Ok(self.to_point[unit - 1])
        } else {
            Err(FanoError::UnitOutOfRange { index: unit })
        }
    }

    pub fn unit_of(&self, point: FanoPoint) -> usize {
        self.to_point
            .iter()
            .position(|&p| p == point)
            .expect("labeling is a bijection")
            + 1
    }

    /// Whether the labeling turns index XOR into point XOR:
    /// point(i) + point(j) = point(i XOR j) for distinct i, j.
    pub fn is_xor_compatible(&self) -> bool {
        (1..=7).all(|i| {
            (1..=7).filter(|&j| j != i).all(|j| {
                let sum = self.to_point[i - 1].0 ^ self.to_point[j - 1].0;
                sum == self.to_point[(i ^ j) - 1].0
            })
        })
    }

    /// The seven lines in unit indices, each triple sorted ascending, the
    /// seven triples sorted among themselves.
    pub fn lines_as_unit_triples(&self) -> [[usize; 3]; 7] {
        let mut triples = BTreeSet::new();
        for i in 1usize..=7 {
            for j in (i + 1)..=7 {
                let third = FanoPoint(self.to_point[i - 1].0 ^ self.to_point[j - 1].0);
                let k = self.unit_of(third);
                let mut t = [i, j, k];
                t.sort_unstable();
                triples.insert(t);
            }
        }
        let v: Vec<[usize; 3]> = triples.into_iter().collect();
        v.try_into().expect("seven lines")
    }
}

/// A cyclically oriented line of unit indices: `(a, b, c)` names the cycle
/// a -> b -> c -> a.  Stored in canonical rotation (smallest index first);
/// two rotations of the same cycle compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrientedLine {
    units: [usize; 3],
}

impl OrientedLine {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self, FanoError> {
        for u in [a, b, c] {
            if !(1..=7).contains(&u) {
                return Err(FanoError::UnitOutOfRange { index: u });
            }
        }
        if a == b || b == c || a == c {
            return Err(FanoError::DegenerateLine { a, b, c });
        }
        let units = [a, b, c];
        let start = (0..3)
            .min_by_key(|&s| units[s])
            .expect("three candidates");
        Ok(OrientedLine {
            units: [units[start], units[(start + 1) % 3], units[(start + 2) % 3]],
        })
    }

    pub fn units(&self) -> [usize; 3] {
        self.units
    }

    pub fn contains(&self, u: usize) -> bool {
        self.units.contains(&u)
    }

    /// The cyclic successor of a unit on this line, if the unit lies on it.
    pub fn successor(&self, u: usize) -> Option<usize> {
        self.units
            .iter()
            .position(|&x| x == u)
            .map(|pos| self.units[(pos + 1) % 3])
    }

    /// The same line with the opposite orientation.
    pub fn reversed(&self) -> OrientedLine {
        OrientedLine::new(self.units[0], self.units[2], self.units[1])
            .expect("reversal preserves validity")
    }

    fn sorted_units(&self) -> [usize; 3] {
        let mut s = self.units;
        s.sort_unstable();
        s
    }
}

impl fmt::Display for OrientedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.units[0], self.units[1], self.units[2])
    }
}

/// The seven classic oriented lines, one per multiplication rule:
/// e1e3 = e2, e2e6 = e4, e4e5 = e1, e3e6 = e5, e1e7 = e6, e2e7 = e5,
/// e4e7 = e3.
pub fn classic_oriented_lines() -> [OrientedLine; 7] {
    [
        (1, 3, 2),
        (2, 6, 4),
        (4, 5, 1),
        (3, 6, 5),
        (1, 7, 6),
        (2, 7, 5),
        (4, 7, 3),
    ]
    .map(|(a, b, c)| OrientedLine::new(a, b, c).expect("classic lines are valid"))
}

/// An 8 x 8 multiplication table on the units e0..e7, every product a signed
/// unit.  Equality is entrywise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultTable {
    entries: [[SignedUnit; 8]; 8],
}

impl MultTable {
    /// Builds the table determined by a labeling and seven oriented lines.
    ///
    /// Each line must be collinear under the labeling, and together the
    /// seven must cover every pair of distinct imaginary units exactly once.
    /// Successor pairs on a line multiply to plus the third unit, reversed
    /// pairs to minus; e0 is the identity and every imaginary unit squares
    /// to -e0.
    pub fn from_oriented_lines(
        labeling: &UnitLabeling,
        lines: &[OrientedLine; 7],
    ) -> Result<Self, FanoError> {
        for line in lines {
            let [a, b, c] = line.units();
            let pa = labeling.point_of(a)?;
            let pb = labeling.point_of(b)?;
            let pc = labeling.point_of(c)?;
            if !FanoPoint::collinear(pa, pb, pc) {
                return Err(FanoError::NotALine { a, b, c });
            }
        }
        // Exactly-once cover of the 21 unit pairs.
        let mut seen_pairs = BTreeSet::new();
        for line in lines {
            let s = line.sorted_units();
            for (x, y) in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
                if !seen_pairs.insert((x, y)) {
                    return Err(FanoError::LinesDontCoverPlane);
                }
            }
        }
        if seen_pairs.len() != 21 {
            return Err(FanoError::LinesDontCoverPlane);
        }
        let mut entries = [[SignedUnit::new(1, 0); 8]; 8];
        for j in 0..8 {
            entries[0][j] = SignedUnit::new(1, j);
            entries[j][0] = SignedUnit::new(1, j);
        }
        for i in 1..8 {
            entries[i][i] = SignedUnit::new(-1, 0);
        }
        for i in 1..8 {
            for j in 1..8 {
                if i == j {
                    continue;
                }
                let line = lines
                    .iter()
                    .find(|l| l.contains(i) && l.contains(j))
                    .expect("cover check guarantees a line per pair");
                let k = line
                    .units()
                    .iter()
                    .copied()
                    .find(|&u| u != i && u != j)
                    .expect("line has a third unit");
                let sign = if line.successor(i) == Some(j) { 1 } else { -1 };
                entries[i][j] = SignedUnit::new(sign, k);
            }
        }
        Ok(MultTable { entries })
    }

    /// The classic table: classic labeling plus classic oriented lines.
    pub fn classic() -> Self {
        MultTable::from_oriented_lines(&UnitLabeling::classic(), &classic_oriented_lines())
            .expect("the classic coding is consistent")
    }

    /// Imports a level-3 basis table.
    pub fn from_unit_table(t: &UnitTable) -> Result<Self, FanoError> {
        if t.level() != 3 {
            return Err(FanoError::WrongLevel { level: t.level() });
        }
        let mut entries = [[SignedUnit::new(1, 0); 8]; 8];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = t.product(i, j);
            }
        }
        Ok(MultTable { entries })
    }

    /// Exports to a [`UnitTable`] for symbolic work.
    pub fn to_unit_table(&self) -> UnitTable {
        let flat: Vec<SignedUnit> = self
            .entries
            .iter()
            .flat_map(|row| row.iter().copied())
            .collect();
        UnitTable::from_entries(3, 8, flat)
    }

    /// The signed unit equal to `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> SignedUnit {
        assert!(i < 8 && j < 8, "unit index out of range");
        self.entries[i][j]
    }

    /// Overwrites one product.  This can (deliberately) break every table
    /// invariant; it exists so that defective tables can be constructed and
    /// fed to [`validate_table`].
    pub fn set_product(&mut self, i: usize, j: usize, value: SignedUnit) {
        assert!(i < 8 && j < 8, "unit index out of range");
        assert!(value.index < 8, "unit index out of range");
        self.entries[i][j] = value;
    }

    /// Recovers the seven oriented lines from the products, verifying that
    /// the table genuinely has Fano line structure with consistent cyclic
    /// signs.  Canonical rotations, sorted.
    pub fn oriented_lines(&self) -> Result<[OrientedLine; 7], FanoError> {
        let mut lines = BTreeSet::new();
        for i in 1..8 {
            for j in (i + 1)..8 {
                let p = self.entries[i][j];
                let k = p.index;
                if k == 0 || k == i || k == j || k > 7 {
                    return Err(FanoError::InvalidTable {
                        reason: format!("e{i} * e{j} does not land on a third imaginary unit"),
                    });
                }
                let oriented = if p.sign > 0 {
                    OrientedLine::new(i, j, k)
                } else {
                    OrientedLine::new(i, k, j)
                }
                .map_err(|_| FanoError::InvalidTable {
                    reason: format!("e{i} * e{j} yields a degenerate line"),
                })?;
                lines.insert(oriented);
            }
        }
        if lines.len() != 7 {
            return Err(FanoError::InvalidTable {
                reason: format!("found {} oriented lines instead of 7", lines.len()),
            });
        }
        // Consistency: each line's six ordered products must follow its cycle.
        for line in &lines {
            let [a, b, c] = line.units();
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                if self.entries[x][y] != SignedUnit::new(1, z)
                    || self.entries[y][x] != SignedUnit::new(-1, z)
                {
                    return Err(FanoError::InvalidTable {
                        reason: format!("products around line {line} are inconsistent"),
                    });
                }
            }
        }
        let v: Vec<OrientedLine> = lines.into_iter().collect();
        Ok(v.try_into().expect("length checked"))
    }

    /// Compact JSON: `{"dim":8,"entries":[[...], ...]}` with entry
    /// `sign * index`.  The value 0 stands for +e0 at position (0, 0) and
    /// for -e0 on the rest of the diagonal; a table with e0-valued products
    /// anywhere else cannot be encoded and is rejected.
    pub fn to_json(&self) -> Result<String, FanoError> {
        let mut rows = Vec::with_capacity(8);
        for (i, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(8);
            for (j, e) in row.iter().enumerate() {
                if e.index == 0 {
                    let ok = (i == 0 && j == 0 && e.sign == 1) || (i == j && i > 0 && e.sign == -1);
                    if !ok {
                        return Err(FanoError::UnencodableEntry { row: i, col: j });
                    }
                    out.push(0i64);
                } else {
                    out.push(e.sign as i64 * e.index as i64);
                }
            }
            rows.push(serde_json::Value::from(out));
        }
        let value = serde_json::json!({ "dim": 8, "entries": rows });
        Ok(value.to_string())
    }

    /// Parses the [`MultTable::to_json`] encoding, enforcing its structural
    /// conventions; algebraic soundness is [`validate_table`]'s job.
    pub fn from_json(text: &str) -> Result<Self, FanoError> {
        let bad = |reason: String| FanoError::BadJson { reason };
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| bad("not an object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"dim\"".into()))?;
        if dim != 8 {
            return Err(bad(format!("dim must be 8, got {dim}")));
        }
        let rows = obj
            .get("entries")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| bad("missing array field \"entries\"".into()))?;
        if rows.len() != 8 {
            return Err(bad(format!("need 8 rows, got {}", rows.len())));
        }
        let mut entries = [[SignedUnit::new(1, 0); 8]; 8];
        for (i, row) in rows.iter().enumerate() {
            let cells = row
                .as_array()
                .ok_or_else(|| bad(format!("row {i} is not an array")))?;
            if cells.len() != 8 {
                return Err(bad(format!("row {i} needs 8 entries, got {}", cells.len())));
            }
            for (j, cell) in cells.iter().enumerate() {
                let v = cell
                    .as_i64()
                    .ok_or_else(|| bad(format!("entry ({i}, {j}) is not an integer")))?;
                if v.unsigned_abs() > 7 {
                    return Err(bad(format!("entry ({i}, {j}) = {v} out of range")));
                }
                entries[i][j] = if v == 0 {
                    if i == 0 && j == 0 {
                        SignedUnit::new(1, 0)
                    } else if i == j {
                        SignedUnit::new(-1, 0)
                    } else {
                        return Err(bad(format!(
                            "entry ({i}, {j}) = 0 is only meaningful on the diagonal"
                        )));
                    }
                } else {
                    SignedUnit::new(if v > 0 { 1 } else { -1 }, v.unsigned_abs() as usize)
                };
            }
        }
        Ok(MultTable { entries })
    }
}

/// Which symbolic alternator failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlternatorSide {
    /// x(xy) - (xx)y
    Left,
    /// (yx)x - y(xx)
    Right,
}

impl fmt::Display for AlternatorSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlternatorSide::Left => write!(f, "left"),
            AlternatorSide::Right => write!(f, "right"),
        }
    }
}

/// A concrete defect found by [`validate_table`].  Polynomial witnesses are
/// in the coordinates a0..a7 (variables 0..8) and b0..b7 (variables 8..16).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    /// e_i e_j != -(e_j e_i) for distinct imaginary i, j.
    Commutation { i: usize, j: usize },
    /// e_i^2 != -e0.
    UnitSquare { i: usize },
    /// N(xy) - N(x)N(y) expanded symbolically; nonzero residual attached.
    NormResidual { residual: Poly },
    /// An alternator component that does not vanish.
    Alternator {
        side: AlternatorSide,
        component: usize,
        residual: Poly,
    },
}

fn render_ab(poly: &Poly) -> String {
    poly.render_with(|v| {
        if v < 8 {
            format!("a{v}")
        } else {
            format!("b{}", v - 8)
        }
    })
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::Commutation { i, j } => {
                write!(f, "e{i} and e{j} fail to anticommute")
            }
            ValidationFailure::UnitSquare { i } => write!(f, "e{i}^2 is not -e0"),
            ValidationFailure::NormResidual { residual } => {
                write!(f, "norm residual N(xy) - N(x)N(y) = {}", render_ab(residual))
            }
            ValidationFailure::Alternator {
                side,
                component,
                residual,
            } => write!(
                f,
                "{side} alternator, component e{component}: {}",
                render_ab(residual)
            ),
        }
    }
}

/// Outcome of the symbolic table validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub anticommutative: bool,
    pub units_square_to_minus_one: bool,
    pub norm_composing: bool,
    pub alternative: bool,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn all_hold(&self) -> bool {
        self.anticommutative
            && self.units_square_to_minus_one
            && self.norm_composing
            && self.alternative
    }
}

/// Proves or refutes, symbolically, that a table is an octonion-style
/// multiplication: anticommuting imaginary units squaring to -e0, a norm
/// residual that vanishes identically, and identically vanishing left and
/// right alternators.  Products are expanded over the 16 indeterminates
/// a0..a7, b0..b7, so `norm_composing: true` is a polynomial identity, not a
/// sampled claim.
pub fn validate_table(table: &MultTable) -> ValidationReport {
    let mut failures = Vec::new();

    let mut anticommutative = true;
    for i in 1..8 {
        for j in (i + 1)..8 {
            if table.product(i, j) != table.product(j, i).negate() {
                anticommutative = false;
                failures.push(ValidationFailure::Commutation { i, j });
            }
        }
    }

    let mut units_square_to_minus_one = true;
    for i in 1..8 {
        if table.product(i, i) != SignedUnit::new(-1, 0) {
            units_square_to_minus_one = false;
            failures.push(ValidationFailure::UnitSquare { i });
        }
    }

    let t = table.to_unit_table();
    let a: Vec<Poly> = (0..8).map(Poly::var).collect();
    let b: Vec<Poly> = (8..16).map(Poly::var).collect();

    // Norm residual: sum of squares of the product coordinates minus the
    // product of the two coordinate sums of squares.
    let xy = t.symbolic_product(&a, &b);
    let sum_sq = |ps: &[Poly]| {
        ps.iter()
            .fold(Poly::zero(), |acc, p| &acc + &(p * p))
    };
    let residual = &sum_sq(&xy) - &(&sum_sq(&a) * &sum_sq(&b));
    let norm_composing = residual.is_zero();
    if !norm_composing {
        failures.push(ValidationFailure::NormResidual { residual });
    }

    // Alternators: x(xy) - (xx)y and (yx)x - y(xx), componentwise.
    let xx = t.symbolic_product(&a, &a);
    let x_xy = t.symbolic_product(&a, &xy);
    let xx_y = t.symbolic_product(&xx, &b);
    let yx = t.symbolic_product(&b, &a);
    let yx_x = t.symbolic_product(&yx, &a);
    let y_xx = t.symbolic_product(&b, &xx);
    let mut alternative = true;
    for k in 0..8 {
        let left = &x_xy[k] - &xx_y[k];
        if !left.is_zero() {
            alternative = false;
            failures.push(ValidationFailure::Alternator {
                side: AlternatorSide::Left,
                component: k,
                residual: left,
            });
            break;
        }
    }
    for k in 0..8 {
        let right = &yx_x[k] - &y_xx[k];
        if !right.is_zero() {
            alternative = false;
            failures.push(ValidationFailure::Alternator {
                side: AlternatorSide::Right,
                component: k,
                residual: right,
            });
            break;
        }
    }

    ValidationReport {
        anticommutative,
        units_square_to_minus_one,
        norm_composing,
        alternative,
        failures,
    }
}

/// What a line's four-dimensional span looks like inside a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraReport {
    pub line: [usize; 3],
    /// Products of the line's units stay inside the span of e0 and the line
    /// (guaranteed true when this report exists; a non-line errors instead).
    pub closed: bool,
    pub associative: bool,
    pub isomorphic_to_quaternions: bool,
}

/// Examines the span of e0 and a line's three units inside a table.
///
/// Errors with [`FanoError::NotALine`] when the triple's pairwise products
/// escape the span — e.g. e1, e2, e4 in the classic table.  On success,
/// reports whether the four-dimensional subalgebra is associative and
/// whether an explicit signed basis map onto the quaternions verifies.
pub fn quaternion_subalgebra(
    table: &MultTable,
    line: [usize; 3],
) -> Result<SubalgebraReport, FanoError> {
    let [a, b, c] = line;
    for u in line {
        if !(1..=7).contains(&u) {
            return Err(FanoError::UnitOutOfRange { index: u });
        }
    }
    if a == b || b == c || a == c {
        return Err(FanoError::DegenerateLine { a, b, c });
    }
    let members = [0usize, a, b, c];
    let local_of = |global: usize| members.iter().position(|&m| m == global);
    // Closure: every pairwise product must land back in the span.
    let mut local = [[SignedUnit::new(1, 0); 4]; 4];
    for (li, &gi) in members.iter().enumerate() {
        for (lj, &gj) in members.iter().enumerate() {
            let p = table.product(gi, gj);
            match local_of(p.index) {
                Some(lk) => local[li][lj] = SignedUnit::new(p.sign, lk),
                None => return Err(FanoError::NotALine { a, b, c }),
            }
        }
    }
    // Associativity is trilinear, so the 64 basis triples are decisive.
    let mul = |x: SignedUnit, y: SignedUnit| {
        let p = local[x.index][y.index];
        SignedUnit::new(x.sign * y.sign * p.sign, p.index)
    };
    let mut associative = true;
    'outer: for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let u = |n| SignedUnit::new(1, n);
                if mul(mul(u(i), u(j)), u(k)) != mul(u(i), mul(u(j), u(k))) {
                    associative = false;
                    break 'outer;
                }
            }
        }
    }
    // Explicit map onto the quaternions: e0 -> f0, a -> f1, b -> f2, and c
    // to whichever signed f3 the product dictates; then verify all sixteen
    // products against the level-2 table.
    let quat = unit_table(2).expect("level 2 is supported");
    let ab = local[1][2];
    let mut images = [SignedUnit::new(1, 0); 4];
    images[0] = SignedUnit::new(1, 0);
    images[1] = SignedUnit::new(1, 1);
    images[2] = SignedUnit::new(1, 2);
    images[3] = SignedUnit::new(if ab.index == 3 { ab.sign } else { 1 }, 3);
    let mut isomorphic = ab.index == 3;
    if isomorphic {
        'check: for i in 0..4 {
            for j in 0..4 {
                let lhs = {
                    let p = quat.product(images[i].index, images[j].index);
                    SignedUnit::new(images[i].sign * images[j].sign * p.sign, p.index)
                };
                let p = local[i][j];
                let rhs = SignedUnit::new(p.sign * images[p.index].sign, images[p.index].index);
                if lhs != rhs {
                    isomorphic = false;
                    break 'check;
                }
            }
        }
    }
    Ok(SubalgebraReport {
        line,
        closed: true,
        associative,
        isomorphic_to_quaternions: isomorphic,
    })
}

/// Transports a table between labelings that share the same plane: unit i
/// under `from` becomes the unit of `to` sitting on the same point.  The
/// products themselves are untouched — only names move — so every algebraic
/// property of the table is preserved.
pub fn recode(
    table: &MultTable,
    from: &UnitLabeling,
    to: &UnitLabeling,
) -> Result<MultTable, FanoError> {
    let mut sigma = [0usize; 8];
    for i in 1..=7 {
        sigma[i] = to.unit_of(from.point_of(i)?);
    }
    let mut entries = [[SignedUnit::new(1, 0); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let p = table.product(i, j);
            let si = if i == 0 { 0 } else { sigma[i] };
            let sj = if j == 0 { 0 } else { sigma[j] };
            let sk = if p.index == 0 { 0 } else { sigma[p.index] };
            entries[si][sj] = SignedUnit::new(p.sign, sk);
        }
    }
    Ok(MultTable { entries })
}

/// A signed relabeling of the eight basis units: unit i maps to
/// `images[i]`.  `images[0]` is always +e0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMap {
    pub images: [SignedUnit; 8],
}

impl BasisMap {
    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, u)| *u == SignedUnit::new(1, i))
    }
}

impl fmt::Display for BasisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..8)
            .map(|i| format!("e{i} -> {}", self.images[i]))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Searches for a signed basis map carrying a validated table onto the
/// doubling-construction octonion table.
///
/// The map is pinned down by the images of three generators: e1, e2, and
/// the smallest unit off the line of e1 and e2.  Candidate images are tried
/// in a fixed order (ascending magnitude, + before -), each candidate is
/// extended multiplicatively to all eight units, and all 64 products are
/// verified; the first success is returned.  A table that fails
/// [`validate_table`] is rejected, since the search only makes sense between
/// genuine octonion tables.
pub fn find_isomorphism(table: &MultTable) -> Result<Option<BasisMap>, FanoError> {
    let report = validate_table(table);
    if !report.all_hold() {
        let reason = report
            .failures
            .first()
            .map(|fail| fail.to_string())
            .unwrap_or_else(|| "validation failed".into());
        return Err(FanoError::InvalidTable { reason });
    }
    let target = unit_table(3).expect("level 3 is supported");
    let k12 = table.product(1, 2).index;
    let c = (1..=7)
        .find(|&u| u != 1 && u != 2 && u != k12)
        .expect("four units lie off any line");

    let tmul = |x: SignedUnit, y: SignedUnit| {
        let p = target.product(x.index, y.index);
        SignedUnit::new(x.sign * y.sign * p.sign, p.index)
    };
    // Candidate images in deterministic order: +f1, -f1, +f2, -f2, ...
    let candidates: Vec<SignedUnit> = (1..=7)
        .flat_map(|m| [SignedUnit::new(1, m), SignedUnit::new(-1, m)])
        .collect();

    for &fa in &candidates {
        for &fb in candidates.iter().filter(|u| u.index != fa.index) {
            let fk12 = tmul(fa, fb);
            for &fc in candidates
                .iter()
                .filter(|u| u.index != fa.index && u.index != fb.index && u.index != fk12.index)
            {
                // Extend multiplicatively to all eight units.
                let mut images = [SignedUnit::new(1, 0); 8];
                images[1] = fa;
                images[2] = fb;
                images[c] = fc;
                let fill = |images: &mut [SignedUnit; 8], i: usize, j: usize| {
                    let p = table.product(i, j);
                    let img = tmul(images[i], images[j]);
                    images[p.index] = SignedUnit::new(p.sign * img.sign, img.index);
                };
                fill(&mut images, 1, 2);
                fill(&mut images, 1, c);
                fill(&mut images, 2, c);
                fill(&mut images, k12, c);
                // All 64 products must transport correctly.
                let mut ok = true;
                'verify: for i in 0..8 {
                    for j in 0..8 {
                        let p = table.product(i, j);
                        let lhs = tmul(images[i], images[j]);
                        let rhs =
                            SignedUnit::new(p.sign * images[p.index].sign, images[p.index].index);
                        if lhs != rhs {
                            ok = false;
                            break 'verify;
                        }
                    }
                }
                if ok {
                    return Ok(Some(BasisMap { images }));
                }
            }
        }
    }
    Ok(None)
}

/// Result of sweeping all 2^7 orientation assignments of a labeling's lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    /// The lines being oriented, in base orientation (ascending indices),
    /// in a fixed order; mask bit b reverses `base_lines[b]`.
    pub base_lines: [OrientedLine; 7],
    pub total: u32,
    /// Masks whose tables pass the full symbolic validation, ascending.
    pub valid_masks: Vec<u8>,
}

impl SweepReport {
    pub fn valid_count(&self) -> usize {
        self.valid_masks.len()
    }

    /// The oriented lines selected by a mask.
    pub fn lines_for_mask(&self, mask: u8) -> [OrientedLine; 7] {
        let mut lines = self.base_lines;
        for (b, line) in lines.iter_mut().enumerate() {
            if mask & (1 << b) != 0 {
                *line = line.reversed();
            }
        }
        lines
    }
}

/// Tries all 128 ways of orienting the seven lines of a labeling and
/// validates each resulting table symbolically.  Exactly 16 assignments
/// yield an octonion table, whatever the labeling.
pub fn orientation_sweep(labeling: &UnitLabeling) -> SweepReport {
    let base_lines = labeling
        .lines_as_unit_triples()
        .map(|[a, b, c]| OrientedLine::new(a, b, c).expect("sorted triples are valid lines"));
    let mut valid_masks = Vec::new();
    let report = SweepReport {
        base_lines,
        total: 128,
        valid_masks: Vec::new(),
    };
    for mask in 0u8..128 {
        let lines = report.lines_for_mask(mask);
        let table = MultTable::from_oriented_lines(labeling, &lines)
            .expect("reorienting valid lines keeps them valid");
        if validate_table(&table).all_hold() {
            valid_masks.push(mask);
        }
    }
    SweepReport {
        valid_masks,
        ..report
    }
}

/// Renders a table's Fano coding as a DOT digraph: one node per unit
/// (labeled with its point string), arrows along each line's cyclic
/// orientation.
pub fn fano_dot(table: &MultTable, labeling: &UnitLabeling) -> Result<String, FanoError> {
    let lines = table.oriented_lines()?;
    let mut out = String::from("digraph fano {\n");
    out.push_str("  layout=circo;\n  node [shape=circle];\n");
    for i in 1..=7 {
        let point = labeling.point_of(i)?;
        out.push_str(&format!("  e{i} [label=\"e{i}\\n{point}\"];\n"));
    }
    for line in &lines {
        let [a, b, c] = line.units();
        out.push_str(&format!("  // line {line}\n"));
        for (x, y) in [(a, b), (b, c), (c, a)] {
            out.push_str(&format!("  e{x} -> e{y};\n"));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
