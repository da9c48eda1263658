//! Blade-basis multivectors and the geometric product.
//!
//! Blades are bitmasks over the generators; the product sign comes from
//! counting the transpositions needed to sort the concatenated generator
//! list, then substituting each repeated generator's square.

use std::collections::BTreeMap;
use std::fmt;

use crate::number::HNumber;

/// Hard cap on the number of generators (64 blades).
pub const MAX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliffordError {
    #[error("operands have different signatures")]
    SignatureMismatch,
    #[error("argument is not a pure grade-1 vector")]
    NotGradeOne,
    #[error("sampled grid needs at least 3 nodes per axis")]
    GridTooSmall,
    #[error("kernel is undefined at the zero vector")]
    ZeroArgument,
    #[error("signature supports at most {MAX_DIM} generators")]
    DimensionTooLarge,
    #[error("cannot parse multivector: {0}")]
    Parse(String),
}

/// Generator squares and naming for one Clifford algebra.
///
/// `Signature::new(p, q)` yields the standard order (`+1` generators
/// first, named `e1..`). The bidimensional Minkowski algebra uses the
/// order `e0^2 = -1`, `e1^2 = +1` and zero-based names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    squares: Vec<i8>,
    first_index: u32,
}

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self, CliffordError> {
        if (p + q) as usize > MAX_DIM {
            return Err(CliffordError::DimensionTooLarge);
        }
        let mut squares = vec![1i8; p as usize];
        squares.resize((p + q) as usize, -1);
        Ok(Signature { squares, first_index: 1 })
    }

    /// The bidimensional Minkowski algebra `{1, e0, e1, I = e0^e1}` with
    /// `e0^2 = -1` and `e1^2 = +1`, so `I^2 = +1`.
    pub fn g2_hyp() -> Self {
        Signature { squares: vec![-1, 1], first_index: 0 }
    }

    /// The Euclidean plane algebra `{1, e1, e2, e1^e2}` (both squares +1).
    pub fn g2_euclidean() -> Self {
        Signature::new(2, 0).expect("2 <= MAX_DIM")
    }

    pub fn dim(&self) -> usize {
        self.squares.len()
    }

    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    /// Square of generator `k` (zero-based position).
    pub fn generator_square(&self, k: usize) -> i8 {
        self.squares[k]
    }

    pub fn generator_name(&self, k: usize) -> String {
        format!("e{}", self.first_index + k as u32)
    }

    /// Position of a generator given its display index, if any.
    fn generator_position(&self, display_index: u32) -> Option<usize> {
        display_index
            .checked_sub(self.first_index)
            .map(|k| k as usize)
            .filter(|&k| k < self.dim())
    }

    /// Display name of a basis blade, `1` for the scalar.
    pub fn blade_name(&self, mask: u8) -> String {
        if mask == 0 {
            return "1".to_string();
        }
        (0..self.dim())
            .filter(|&k| mask & (1 << k) != 0)
            .map(|k| self.generator_name(k))
            .collect::<Vec<_>>()
            .join("^")
    }
}

/// Sign of moving every generator of `b` past the higher generators of `a`.
fn reorder_sign(a: u8, b: u8) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Product of two basis blades: the signed coefficient and the result mask.
pub fn blade_product(sig: &Signature, a: u8, b: u8) -> (f64, u8) {
    let mut sign = reorder_sign(a, b);
    let mut common = a & b;
    while common != 0 {
        let k = common.trailing_zeros() as usize;
        sign *= f64::from(sig.generator_square(k));
        common &= common - 1;
    }
    (sign, a ^ b)
}

/// A sparse blade-coefficient map over one signature.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: BTreeMap<u8, f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, coeffs: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        let mut m = Multivector::zero(sig);
        m.add_term(0, value);
        m
    }

    /// The `k`-th generator (zero-based position) as a multivector.
    pub fn generator(sig: Signature, k: usize) -> Self {
        assert!(k < sig.dim(), "generator index out of range");
        let mut m = Multivector::zero(sig);
        m.add_term(1 << k, 1.0);
        m
    }

    pub fn basis_blade(sig: Signature, mask: u8) -> Self {
        assert!((mask as usize) < sig.blade_count(), "blade out of range");
        let mut m = Multivector::zero(sig);
        m.add_term(mask, 1.0);
        m
    }

    /// Embedding of the hyperbolic ring into `Cl(1,0)` as scalar + e1.
    pub fn from_hyperbolic_cl10(z: HNumber) -> Self {
        let sig = Signature::new(1, 0).expect("1 <= MAX_DIM");
        let mut m = Multivector::zero(sig);
        m.add_term(0, z.re);
        m.add_term(1, z.im);
        m
    }

    /// Embedding of the hyperbolic ring into the Minkowski plane algebra
    /// as scalar + bivector (`x + y I`, using `I^2 = +1`).
    pub fn from_hyperbolic_g2(z: HNumber) -> Self {
        let mut m = Multivector::zero(Signature::g2_hyp());
        m.add_term(0b00, z.re);
        m.add_term(0b11, z.im);
        m
    }

    /// Reads a scalar + bivector element of the Minkowski plane algebra
    /// back into the hyperbolic ring.
    pub fn to_hyperbolic_g2(&self) -> Result<HNumber, CliffordError> {
        if self.sig != Signature::g2_hyp() {
            return Err(CliffordError::SignatureMismatch);
        }
        if self.coeffs.keys().any(|&m| m != 0b00 && m != 0b11) {
            return Err(CliffordError::NotGradeOne);
        }
        Ok(HNumber::new(self.coeff(0b00), self.coeff(0b11)))
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn coeff(&self, mask: u8) -> f64 {
        self.coeffs.get(&mask).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, f64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    fn add_term(&mut self, mask: u8, value: f64) {
        if value == 0.0 {
            return;
        }
        let slot = self.coeffs.entry(mask).or_insert(0.0);
        *slot += value;
        if *slot == 0.0 {
            self.coeffs.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest absolute coefficient difference; the blade-wise distance.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        let mut worst = 0.0f64;
        for mask in self.coeffs.keys().chain(other.coeffs.keys()) {
            worst = worst.max((self.coeff(*mask) - other.coeff(*mask)).abs());
        }
        worst
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scale(&self, k: f64) -> Multivector {
        let mut out = Multivector::zero(self.sig.clone());
        for (&mask, &c) in &self.coeffs {
            out.add_term(mask, c * k);
        }
        out
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector, CliffordError> {
        if self.sig != other.sig {
            return Err(CliffordError::SignatureMismatch);
        }
        let mut out = self.clone();
        for (&mask, &c) in &other.coeffs {
            out.add_term(mask, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector, CliffordError> {
        self.add(&other.scale(-1.0))
    }

    /// The geometric (Clifford) product.
    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector, CliffordError> {
        if self.sig != other.sig {
            return Err(CliffordError::SignatureMismatch);
        }
        let mut out = Multivector::zero(self.sig.clone());
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                let (sign, mask) = blade_product(&self.sig, a, b);
                out.add_term(mask, sign * ca * cb);
            }
        }
        Ok(out)
    }

    /// Projection onto the grade-`r` part.
    pub fn grade(&self, r: u32) -> Multivector {
        let mut out = Multivector::zero(self.sig.clone());
        for (&mask, &c) in &self.coeffs {
            if mask.count_ones() == r {
                out.add_term(mask, c);
            }
        }
        out
    }

    /// Grades present with a nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<u32> {
        let mut gs: Vec<u32> = self.coeffs.keys().map(|m| m.count_ones()).collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    /// Reversion: blade-wise sign `(-1)^(r(r-1)/2)`.
    pub fn reversion(&self) -> Multivector {
        let mut out = Multivector::zero(self.sig.clone());
        for (&mask, &c) in &self.coeffs {
            let r = mask.count_ones();
            let sign = if (r * r.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term(mask, sign * c);
        }
        out
    }

    /// Clifford conjugation (grade involution composed with reversion),
    /// blade-wise sign `(-1)^(r(r+1)/2)`; negates every 1-vector.
    pub fn conjugate(&self) -> Multivector {
        let mut out = Multivector::zero(self.sig.clone());
        for (&mask, &c) in &self.coeffs {
            let r = mask.count_ones();
            let sign = if (r * (r + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term(mask, sign * c);
        }
        out
    }

    /// Outer product: the grade-`(r+s)` part of each blade product,
    /// extended bilinearly. Blade-wise that keeps exactly the disjoint
    /// pairs, where the geometric and outer products agree.
    pub fn outer(&self, other: &Multivector) -> Result<Multivector, CliffordError> {
        if self.sig != other.sig {
            return Err(CliffordError::SignatureMismatch);
        }
        let mut out = Multivector::zero(self.sig.clone());
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                if a & b == 0 {
                    let (sign, mask) = blade_product(&self.sig, a, b);
                    out.add_term(mask, sign * ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Scalar product `<A B>_0`.
    pub fn scalar_product(&self, other: &Multivector) -> Result<f64, CliffordError> {
        if self.sig != other.sig {
            return Err(CliffordError::SignatureMismatch);
        }
        let mut acc = 0.0;
        for (&a, &ca) in &self.coeffs {
            // Only equal masks land on the scalar blade.
            let cb = other.coeff(a);
            if cb != 0.0 {
                let (sign, _) = blade_product(&self.sig, a, a);
                acc += sign * ca * cb;
            }
        }
        Ok(acc)
    }

    /// Magnitude `sqrt(|A† * A|)` with the pseudo-euclidean absolute value.
    pub fn magnitude(&self) -> f64 {
        self.reversion()
            .scalar_product(self)
            .expect("same signature by construction")
            .abs()
            .sqrt()
    }

    /// Parses the `3 + 2*e1 - 1*e0^e1` text format.
    pub fn parse(sig: &Signature, input: &str) -> Result<Multivector, CliffordError> {
        let mut out = Multivector::zero(sig.clone());
        let compact: String = input.split_whitespace().collect::<Vec<_>>().join("");
        if compact.is_empty() {
            return Err(CliffordError::Parse("empty input".into()));
        }
        // Split into signed terms.
        let mut terms: Vec<(f64, String)> = Vec::new();
        let mut current = String::new();
        let mut sign = 1.0;
        let mut chars = compact.chars().peekable();
        if chars.peek() == Some(&'-') {
            sign = -1.0;
            chars.next();
        } else if chars.peek() == Some(&'+') {
            chars.next();
        }
        for ch in chars {
            match ch {
                '+' | '-' => {
                    if current.ends_with('e') || current.ends_with('E') {
                        // Exponent sign inside a number literal.
                        current.push(ch);
                    } else {
                        terms.push((sign, std::mem::take(&mut current)));
                        sign = if ch == '-' { -1.0 } else { 1.0 };
                    }
                }
                _ => current.push(ch),
            }
        }
        terms.push((sign, current));
        for (sign, term) in terms {
            if term.is_empty() {
                return Err(CliffordError::Parse("dangling sign".into()));
            }
            let (coef, blade_txt) = match term.split_once('*') {
                Some((c, b)) => {
                    let coef = c
                        .parse::<f64>()
                        .map_err(|_| CliffordError::Parse(format!("bad coefficient {c:?}")))?;
                    (coef, Some(b))
                }
                None if term.starts_with('e') && term[1..].starts_with(|c: char| c.is_ascii_digit()) => {
                    (1.0, Some(term.as_str()))
                }
                None => {
                    let coef = term
                        .parse::<f64>()
                        .map_err(|_| CliffordError::Parse(format!("bad term {term:?}")))?;
                    (coef, None)
                }
            };
            let mask = match blade_txt {
                None => 0u8,
                Some(b) => {
                    let mut mask = 0u8;
                    for gen in b.split('^') {
                        let idx = gen
                            .strip_prefix('e')
                            .and_then(|d| d.parse::<u32>().ok())
                            .ok_or_else(|| CliffordError::Parse(format!("bad generator {gen:?}")))?;
                        let k = sig
                            .generator_position(idx)
                            .ok_or_else(|| CliffordError::Parse(format!("unknown generator e{idx}")))?;
                        if mask & (1 << k) != 0 {
                            return Err(CliffordError::Parse(format!("repeated generator e{idx}")));
                        }
                        mask |= 1 << k;
                    }
                    mask
                }
            };
            out.add_term(mask, sign * coef);
        }
        Ok(out)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&mask, &c)) in self.coeffs.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else if c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mask == 0 {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*{}", self.sig.blade_name(mask))?;
            }
        }
        Ok(())
    }
}

/// Which bidimensional algebra a 2x2 matrix representation realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinarySig {
    /// `(1,0)`: the hyperbolic ring.
    Hyperbolic,
    /// `(0,1)`: the complex field.
    Complex,
}

/// 2x2 real matrix representation of `x1 + x2 * (second basis unit)`.
///
/// The hyperbolic case uses the symmetric-swap matrix; the complex case
/// uses the rotation generator (both are real matrices).
pub fn pauli_iso(sig: BinarySig, x: (f64, f64)) -> [[f64; 2]; 2] {
    match sig {
        BinarySig::Hyperbolic => [[x.0, x.1], [x.1, x.0]],
        BinarySig::Complex => [[x.0, x.1], [-x.1, x.0]],
    }
}

/// The abstract componentwise product the matrices must realize.
pub fn pauli_product(sig: BinarySig, x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    match sig {
        BinarySig::Hyperbolic => (x.0 * y.0 + x.1 * y.1, x.0 * y.1 + x.1 * y.0),
        BinarySig::Complex => (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0),
    }
}

fn mat_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut m = [[0.0; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// Verifies `Is(x) . Is(y) = Is(x . y)` by explicit matrix multiplication.
pub fn pauli_check(sig: BinarySig, x: (f64, f64), y: (f64, f64)) -> bool {
    let lhs = mat_mul(pauli_iso(sig, x), pauli_iso(sig, y));
    let rhs = pauli_iso(sig, pauli_product(sig, x, y));
    let mut worst = 0.0f64;
    let mut scale = 1.0f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((lhs[i][j] - rhs[i][j]).abs());
            scale = scale.max(lhs[i][j].abs());
        }
    }
    worst <= 1e-14 * scale
}

/// `F(z) = z e0`: sends `x + yI` to the vector `x e0 + y e1`.
pub fn f_map(z: HNumber) -> Multivector {
    let e0 = Multivector::generator(Signature::g2_hyp(), 0);
    Multivector::from_hyperbolic_g2(z)
        .geometric_product(&e0)
        .expect("same signature by construction")
}

/// `F^-1(x e0 + y e1) = -(x e0 + y e1) e0 = x + yI`.
pub fn f_inverse(v: &Multivector) -> Result<HNumber, CliffordError> {
    if *v.signature() != Signature::g2_hyp() {
        return Err(CliffordError::SignatureMismatch);
    }
    if !v.grade(1).sub(v).expect("same signature").is_zero() {
        return Err(CliffordError::NotGradeOne);
    }
    let e0 = Multivector::generator(Signature::g2_hyp(), 0);
    v.geometric_product(&e0)?.scale(-1.0).to_hyperbolic_g2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> Signature {
        Signature::g2_hyp()
    }

    #[test]
    fn generator_squares_follow_the_signature() {
        let cl10 = Signature::new(1, 0).unwrap();
        let e1 = Multivector::generator(cl10.clone(), 0);
        let sq = e1.geometric_product(&e1).unwrap();
        assert_eq!(sq, Multivector::scalar(cl10, 1.0));

        let cl01 = Signature::new(0, 1).unwrap();
        let e1 = Multivector::generator(cl01.clone(), 0);
        let sq = e1.geometric_product(&e1).unwrap();
        assert_eq!(sq, Multivector::scalar(cl01, -1.0));
    }

    #[test]
    fn minkowski_bivector_squares_to_plus_one() {
        let i = Multivector::basis_blade(g2(), 0b11);
        let sq = i.geometric_product(&i).unwrap();
        assert_eq!(sq, Multivector::scalar(g2(), 1.0));
    }

    #[test]
    fn flip_identities_are_exact() {
        let e0 = Multivector::generator(g2(), 0);
        let e1 = Multivector::generator(g2(), 1);
        let i = Multivector::basis_blade(g2(), 0b11);
        assert_eq!(i.geometric_product(&e0).unwrap(), e1);
        assert_eq!(i.geometric_product(&e1).unwrap(), e0);
        assert_eq!(e0.geometric_product(&i).unwrap(), e1.scale(-1.0));
        assert_eq!(e1.geometric_product(&i).unwrap(), e0.scale(-1.0));
        let ab = e0.geometric_product(&e1).unwrap();
        let ba = e1.geometric_product(&e0).unwrap();
        assert_eq!(ab, ba.scale(-1.0));
    }

    #[test]
    fn product_is_associative_on_random_triples() {
        let sig = Signature::new(2, 1).unwrap();
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for _ in 0..50 {
            let mut rand_mv = |sig: &Signature| {
                let mut m = Multivector::zero(sig.clone());
                for mask in 0..sig.blade_count() as u8 {
                    m.add_term(mask, next());
                }
                m
            };
            let (a, b, c) = (rand_mv(&sig), rand_mv(&sig), rand_mv(&sig));
            let lhs = a.geometric_product(&b).unwrap().geometric_product(&c).unwrap();
            let rhs = a.geometric_product(&b.geometric_product(&c).unwrap()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + lhs.coeff_norm()));
        }
    }

    #[test]
    fn grade_decomposition_is_exact() {
        let sig = Signature::new(3, 0).unwrap();
        let mut a = Multivector::zero(sig.clone());
        for mask in 0..8u8 {
            a.add_term(mask, (mask as f64 + 1.0) * 0.5);
        }
        let mut rebuilt = Multivector::zero(sig);
        for r in 0..=3 {
            rebuilt = rebuilt.add(&a.grade(r)).unwrap();
            let twice = a.grade(r).grade(r);
            assert_eq!(twice, a.grade(r));
        }
        assert_eq!(rebuilt, a);
        assert_eq!(a.grades(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn grade_operator_is_linear() {
        let sig = Signature::new(2, 1).unwrap();
        let a = Multivector::parse(&sig, "1 + 2*e1 - 3*e1^e2 + 0.5*e3").unwrap();
        let b = Multivector::parse(&sig, "4 - 1*e1 + 2*e2^e3").unwrap();
        for r in 0..=2 {
            let lhs = a.add(&b).unwrap().grade(r);
            let rhs = a.grade(r).add(&b.grade(r)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reversion_reverses_generator_products() {
        let sig = Signature::new(3, 0).unwrap();
        let e123 = Multivector::basis_blade(sig.clone(), 0b111);
        assert_eq!(e123.reversion(), e123.scale(-1.0));
        // Anti-automorphism on random blades.
        let a = Multivector::parse(&sig, "1 + 2*e1 + 3*e1^e2").unwrap();
        let b = Multivector::parse(&sig, "0.5*e2 - 1*e1^e3 + 2*e1^e2^e3").unwrap();
        let lhs = a.geometric_product(&b).unwrap().reversion();
        let rhs = b.reversion().geometric_product(&a.reversion()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn outer_product_kills_repeated_generators() {
        let sig = Signature::new(3, 0).unwrap();
        let e1 = Multivector::generator(sig.clone(), 0);
        let e2 = Multivector::generator(sig.clone(), 1);
        assert!(e1.outer(&e1).unwrap().is_zero());
        assert_eq!(e1.outer(&e2).unwrap(), Multivector::basis_blade(sig, 0b11));
    }

    #[test]
    fn vectors_square_to_scalars() {
        let sig = Signature::new(2, 1).unwrap();
        let v = Multivector::parse(&sig, "1*e1 - 2*e2 + 0.5*e3").unwrap();
        let sq = v.geometric_product(&v).unwrap();
        assert_eq!(sq.grades(), vec![0]);
        // 1 + 4 - 0.25 under (+ + -)
        assert!((sq.coeff(0) - 4.75).abs() < 1e-15);
    }

    #[test]
    fn magnitude_uses_the_absolute_scalar_product() {
        let e0 = Multivector::generator(g2(), 0);
        assert!((e0.magnitude() - 1.0).abs() < 1e-15);
        let i = Multivector::basis_blade(g2(), 0b11);
        assert!((i.magnitude() - 1.0).abs() < 1e-15);
        let s = Multivector::scalar(g2(), -3.0);
        assert!((s.magnitude() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_product_is_symmetric_on_equal_grade_blades() {
        let sig = Signature::new(2, 1).unwrap();
        for mask in 0..sig.blade_count() as u8 {
            for other in 0..sig.blade_count() as u8 {
                if mask.count_ones() != other.count_ones() {
                    continue;
                }
                let a = Multivector::basis_blade(sig.clone(), mask);
                let b = Multivector::basis_blade(sig.clone(), other);
                assert_eq!(
                    a.scalar_product(&b).unwrap(),
                    b.scalar_product(&a).unwrap(),
                    "asymmetry at {mask:#b}, {other:#b}"
                );
            }
        }
    }

    #[test]
    fn signature_mismatch_is_rejected() {
        let a = Multivector::scalar(Signature::new(1, 0).unwrap(), 1.0);
        let b = Multivector::scalar(Signature::new(0, 1).unwrap(), 1.0);
        assert!(matches!(a.geometric_product(&b), Err(CliffordError::SignatureMismatch)));
        assert!(Signature::new(4, 3).is_err());
    }

    #[test]
    fn cl10_embeds_the_hyperbolic_ring() {
        let pairs = [
            (HNumber::new(0.3, -1.2), HNumber::new(2.0, 0.7)),
            (HNumber::new(-1.0, 1.0), HNumber::new(0.5, 0.5)),
        ];
        for (z1, z2) in pairs {
            let lhs = Multivector::from_hyperbolic_cl10(z1)
                .geometric_product(&Multivector::from_hyperbolic_cl10(z2))
                .unwrap();
            let rhs = Multivector::from_hyperbolic_cl10(z1 * z2);
            assert!(lhs.max_abs_diff(&rhs) < 1e-14);
        }
    }

    #[test]
    fn g2_embedding_multiplies_like_the_ring() {
        let (z1, z2) = (HNumber::new(1.5, -0.5), HNumber::new(-0.3, 2.0));
        let lhs = Multivector::from_hyperbolic_g2(z1)
            .geometric_product(&Multivector::from_hyperbolic_g2(z2))
            .unwrap();
        let rhs = Multivector::from_hyperbolic_g2(z1 * z2);
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn pauli_matrices_realize_both_products() {
        assert!(pauli_check(BinarySig::Hyperbolic, (2.0, 3.0), (-1.0, 0.5)));
        assert!(pauli_check(BinarySig::Complex, (2.0, 3.0), (-1.0, 0.5)));
        let m = pauli_iso(BinarySig::Hyperbolic, (1.0, 2.0));
        assert_eq!(m, [[1.0, 2.0], [2.0, 1.0]]);
        let c = pauli_iso(BinarySig::Complex, (1.0, 2.0));
        assert_eq!(c, [[1.0, 2.0], [-2.0, 1.0]]);
        // Hyperbolic product matches the ring's multiplication exactly.
        let got = pauli_product(BinarySig::Hyperbolic, (1.0, 2.0), (3.0, 1.0));
        assert_eq!(HNumber::new(got.0, got.1), HNumber::new(1.0, 2.0) * HNumber::new(3.0, 1.0));
    }

    #[test]
    fn f_map_sends_the_ring_onto_vectors() {
        let z = HNumber::new(1.0, 2.0);
        let got = f_map(z);
        let sig = g2();
        let want = Multivector::generator(sig.clone(), 0)
            .add(&Multivector::generator(sig, 1).scale(2.0))
            .unwrap();
        assert_eq!(got, want);
        assert_eq!(f_inverse(&got).unwrap(), z);
    }

    #[test]
    fn f_inverse_round_trips() {
        let mut seed = 42u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 * 6.0 - 3.0
        };
        for _ in 0..50 {
            let z = HNumber::new(next(), next());
            assert_eq!(f_inverse(&f_map(z)).unwrap(), z);
        }
    }

    #[test]
    fn f_inverse_rejects_non_vectors() {
        let s = Multivector::scalar(g2(), 1.0);
        assert!(matches!(f_inverse(&s), Err(CliffordError::NotGradeOne)));
    }

    #[test]
    fn text_format_round_trips() {
        let sig = g2();
        let cases = ["3 + 2*e1 - 1*e0^e1", "-1*e0", "0.5", "1*e0^e1", "2 - 0.25*e1"];
        for s in cases {
            let m = Multivector::parse(&sig, s).unwrap();
            let back = Multivector::parse(&sig, &m.to_string()).unwrap();
            assert_eq!(m, back, "round trip of {s:?}");
        }
        // Bare blade names are accepted.
        let m = Multivector::parse(&sig, "e0^e1").unwrap();
        assert_eq!(m, Multivector::basis_blade(g2(), 0b11));
        assert!(Multivector::parse(&sig, "2*e7").is_err());
        assert!(Multivector::parse(&sig, "e1^e1").is_err());
        assert!(Multivector::parse(&Signature::new(2, 0).unwrap(), "1 + e0").is_err());
    }
}
