//! Arithmetic tables for GF(q^2) and the Hermitian-unital incidence
//! structure: the q^3 + 1 points of the Hermitian curve in PG(2, q^2)
//! against its q^4 - q^3 + q^2 secant lines.

use crate::bipartite::BipartiteIncidence;
use crate::error::{Error, Result};
use crate::pattern;

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Lookup tables for GF(q^2) in the polynomial representation over GF(q)
/// with the lexicographically least irreducible `x^2 + b x + c`. Element
/// `a0 + a1 x` has index `a0 + a1 q`.
pub struct FieldTables {
    pub q: usize,
    pub q2: usize,
    pub irreducible: (usize, usize),
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

pub const MAX_FIELD_Q: u64 = 13;

/// Build the full arithmetic tables for GF(q^2), `q` prime, `q <= 13`.
pub fn build_field(q: u64) -> Result<FieldTables> {
    if !is_prime(q) {
        return Err(Error::domain(format!("q = {q} is not prime")));
    }
    if q > MAX_FIELD_Q {
        return Err(Error::budget(format!(
            "field tables are limited to q <= {MAX_FIELD_Q}, got {q}"
        )));
    }
    let q = q as usize;
    let q2 = q * q;
    // least (b, c) with x^2 + b x + c irreducible over GF(q)
    let (b, c) = (0..q)
        .flat_map(|b| (0..q).map(move |c| (b, c)))
        .find(|&(b, c)| (0..q).all(|x| (x * x + b * x + c) % q != 0))
        .expect("an irreducible quadratic exists over every prime field");

    let idx = |a0: usize, a1: usize| a0 + a1 * q;
    let mut add = vec![0u16; q2 * q2];
    let mut mul = vec![0u16; q2 * q2];
    for a1 in 0..q {
        for a0 in 0..q {
            for b1 in 0..q {
                for b0 in 0..q {
                    let i = idx(a0, a1);
                    let j = idx(b0, b1);
                    add[i * q2 + j] = idx((a0 + b0) % q, (a1 + b1) % q) as u16;
                    // (a0 + a1 x)(b0 + b1 x) with x^2 = -b x - c
                    let x2_coeff = a1 * b1;
                    let lin = a0 * b1 + a1 * b0 + (q - b % q) * x2_coeff % q;
                    let con = a0 * b0 + (q - c % q) * x2_coeff % q;
                    mul[i * q2 + j] = idx(con % q, lin % q) as u16;
                }
            }
        }
    }
    let mut inv = vec![0u16; q2];
    for i in 1..q2 {
        let j = (1..q2)
            .find(|&j| mul[i * q2 + j] == 1)
            .expect("every nonzero element of a field is invertible");
        inv[i] = j as u16;
    }
    // Frobenius x -> x^q by repeated multiplication
    let mut frob = vec![0u16; q2];
    for (i, f) in frob.iter_mut().enumerate() {
        let mut acc = 1usize;
        for _ in 0..q {
            acc = mul[acc * q2 + i] as usize;
        }
        *f = acc as u16;
    }
    Ok(FieldTables {
        q,
        q2,
        irreducible: (b, c),
        add,
        mul,
        inv,
        frob,
    })
}

impl FieldTables {
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q2 + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q2 + b] as usize
    }

    pub fn inv(&self, a: usize) -> Result<usize> {
        if a == 0 {
            return Err(Error::domain("inverse of zero".to_string()));
        }
        Ok(self.inv[a] as usize)
    }

    /// Frobenius conjugate `x^q`.
    #[inline]
    pub fn frob(&self, a: usize) -> usize {
        self.frob[a] as usize
    }

    /// Norm onto the base field: `x^(q+1) = x * x^q`.
    #[inline]
    pub fn norm(&self, a: usize) -> usize {
        self.mul(a, self.frob(a))
    }

    /// Is the element in the base subfield GF(q)?
    #[inline]
    pub fn in_base_field(&self, a: usize) -> bool {
        a < self.q
    }
}

/// A point (or, dually, a line) of PG(2, q^2): homogeneous coordinates with
/// the last nonzero coordinate normalized to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    pub coords: [usize; 3],
}

/// All points of PG(2, q^2) in a fixed deterministic order:
/// `(x, y, 1)`, then `(x, 1, 0)`, then `(1, 0, 0)`.
pub fn projective_points(field: &FieldTables) -> Vec<ProjectivePoint> {
    let q2 = field.q2;
    let mut pts = Vec::with_capacity(q2 * q2 + q2 + 1);
    for y in 0..q2 {
        for x in 0..q2 {
            pts.push(ProjectivePoint { coords: [x, y, 1] });
        }
    }
    for x in 0..q2 {
        pts.push(ProjectivePoint { coords: [x, 1, 0] });
    }
    pts.push(ProjectivePoint { coords: [1, 0, 0] });
    pts
}

/// Does the point lie on the line (dual coordinates)?
fn incident(field: &FieldTables, line: &ProjectivePoint, point: &ProjectivePoint) -> bool {
    let mut acc = 0;
    for i in 0..3 {
        acc = field.add(acc, field.mul(line.coords[i], point.coords[i]));
    }
    acc == 0
}

/// Report accompanying a constructed unital.
#[derive(Clone, Debug)]
pub struct UnitalReport {
    pub q: usize,
    pub points_on_curve: usize,
    pub secants: usize,
    pub tangents: usize,
    /// Whether the rooted-K4-subdivision check ran (exhaustive for q <= 3).
    pub subdivision_checked: bool,
}

pub const MAX_UNITAL_Q: u64 = 7;

/// The Hermitian unital for prime `q`: Y = points of the curve
/// `x^(q+1) + y^(q+1) + z^(q+1) = 0` in PG(2, q^2), X = secant lines
/// (meeting the curve in exactly q+1 points), incidence by containment.
///
/// All structural facts are verified before returning: |Y| = q^3 + 1,
/// |X| = q^4 - q^3 + q^2, the tangent/secant dichotomy, the degrees on both
/// sides, C4-freeness, and (for q <= 3) the absence of an X-rooted
/// K4-subdivision. A failure in any of these signals an arithmetic bug and
/// comes back as a construction error.
pub fn hermitian_unital(q: u64) -> Result<(BipartiteIncidence, UnitalReport)> {
    if q > MAX_UNITAL_Q {
        return Err(Error::budget(format!(
            "unital construction is limited to q <= {MAX_UNITAL_Q}, got {q}"
        )));
    }
    let field = build_field(q)?;
    let q = field.q;
    let points = projective_points(&field);

    // the curve: norm(x) + norm(y) + norm(z) = 0
    let curve: Vec<ProjectivePoint> = points
        .iter()
        .copied()
        .filter(|p| {
            let mut acc = 0;
            for &c in &p.coords {
                acc = field.add(acc, field.norm(c));
            }
            acc == 0
        })
        .collect();
    let expected_points = q * q * q + 1;
    if curve.len() != expected_points {
        return Err(Error::Construction(format!(
            "Hermitian curve has {} points, expected {expected_points}",
            curve.len()
        )));
    }

    // classify lines by their number of curve points
    let mut secants: Vec<Vec<u32>> = Vec::new();
    let mut tangents = 0usize;
    for line in &points {
        let on_line: Vec<u32> = curve
            .iter()
            .enumerate()
            .filter(|(_, p)| incident(&field, line, p))
            .map(|(i, _)| i as u32)
            .collect();
        match on_line.len() {
            1 => tangents += 1,
            len if len == q + 1 => secants.push(on_line),
            other => {
                return Err(Error::Construction(format!(
                    "line meets the curve in {other} points; expected 1 or {}",
                    q + 1
                )))
            }
        }
    }
    let expected_secants = q * q * q * q - q * q * q + q * q;
    if secants.len() != expected_secants {
        return Err(Error::Construction(format!(
            "{} secant lines, expected {expected_secants}",
            secants.len()
        )));
    }

    let mut k = BipartiteIncidence::new(secants.len(), curve.len());
    for (x, ys) in secants.iter().enumerate() {
        for &y in ys {
            k.add_edge(x, y as usize)?;
        }
    }
    // degrees: q+1 on the X side by construction; q^2 on the Y side
    for (y, d) in k.degrees_y().iter().enumerate() {
        if *d != q * q {
            return Err(Error::Construction(format!(
                "curve point {y} lies on {d} secants, expected {}",
                q * q
            )));
        }
    }
    if pattern::bipartite_has_c4(&k) {
        return Err(Error::Construction(
            "unital incidence contains a C4".to_string(),
        ));
    }
    let subdivision_checked = q <= 3;
    if subdivision_checked && pattern::has_rooted_k4_subdivision(&k)? {
        return Err(Error::Construction(
            "unital incidence contains an X-rooted K4-subdivision".to_string(),
        ));
    }
    let report = UnitalReport {
        q,
        points_on_curve: curve.len(),
        secants: secants.len(),
        tangents,
        subdivision_checked,
    };
    Ok((k, report))
}
