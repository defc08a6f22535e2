//! Hamming and Johnson schemes: exact eigenmatrices, vertex codec, spheres.
//!
//! Eigenmatrix convention: `P[i][j]` is the eigenvalue of the distance-`i`
//! relation matrix `A_i` on the `j`-th common eigenspace `E_j V`, so column 0
//! of `P` holds the valencies and row 0 is all ones. `Q` is fixed by
//! `P·Q = |X|·I`; consequently `Q[j][i]` is the coefficient of `A_i` in
//! `|X|·E_j`, row 0 of `Q` is all ones and column 0 holds the multiplicities.
//!
//! Vertices are packed into a `u128`. Hamming words store coordinate `k`
//! (0-based, leftmost most significant) in a fixed-width digit field, so
//! numeric order on the packed value is lexicographic order on words.
//! Johnson vertices are `D`-subsets of `{1..N}` stored as bitmasks with
//! element `e` at bit `e-1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{big, binomial, binomial_u128, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hamming,
    Johnson,
}

/// Family plus parameters: `H(D,q)` or `J(N,D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeSpec {
    Hamming { d: usize, q: u32 },
    Johnson { n: usize, d: usize },
}

impl SchemeSpec {
    pub fn family(&self) -> Family {
        match self {
            SchemeSpec::Hamming { .. } => Family::Hamming,
            SchemeSpec::Johnson { .. } => Family::Johnson,
        }
    }

    pub fn classes(&self) -> usize {
        match *self {
            SchemeSpec::Hamming { d, .. } | SchemeSpec::Johnson { d, .. } => d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SchemeSpec::Hamming { d, q } => {
                if d < 1 {
                    return Err(Error::Config(format!("H(D,q) needs D >= 1, got D = {d}")));
                }
                if q < 2 {
                    return Err(Error::Config(format!("H(D,q) needs q >= 2, got q = {q}")));
                }
            }
            SchemeSpec::Johnson { n, d } => {
                if d < 1 || d > n / 2 {
                    return Err(Error::Config(format!(
                        "J(N,D) needs 1 <= D <= floor(N/2), got N = {n}, D = {d}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpec::Hamming { d, q } => write!(f, "H({d},{q})"),
            SchemeSpec::Johnson { n, d } => write!(f, "J({n},{d})"),
        }
    }
}

impl serde::Serialize for SchemeSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for SchemeSpec {
    type Err = Error;

    /// Accepts `H(24,2)`, `J(24,8)`, `hamming:24:2` and `johnson:24:8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("unrecognised scheme spec `{s}`"));
        let (fam, a, b) = if let Some((fam, rest)) = s.split_once('(') {
            let rest = rest.strip_suffix(')').ok_or_else(bad)?;
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            (fam.trim().to_ascii_lowercase(), a.trim(), b.trim())
        } else {
            let mut parts = s.split(':');
            let fam = parts.next().ok_or_else(bad)?.to_ascii_lowercase();
            let a = parts.next().ok_or_else(bad)?;
            let b = parts.next().ok_or_else(bad)?;
            if parts.next().is_some() {
                return Err(bad());
            }
            (fam, a, b)
        };
        let a: usize = a.parse().map_err(|_| bad())?;
        let b: usize = b.parse().map_err(|_| bad())?;
        let spec = match fam.as_str() {
            "h" | "hamming" => SchemeSpec::Hamming { d: a, q: b as u32 },
            "j" | "johnson" => SchemeSpec::Johnson { n: a, d: b },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A vertex in packed form. Only meaningful together with its scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub(crate) u128);

impl Vertex {
    pub fn bits(self) -> u128 {
        self.0
    }
}

#[derive(Clone, Copy, Debug)]
enum Codec {
    Hamming { d: usize, q: u32, digit_bits: u32, low_mask: u128 },
    Johnson { n: usize, d: usize },
}

/// An immutable Hamming or Johnson scheme with exact spectral data.
#[derive(Debug, Clone)]
pub struct Scheme {
    spec: SchemeSpec,
    vertex_count: BigInt,
    valencies: Vec<BigInt>,
    multiplicities: Vec<BigInt>,
    p: RatMatrix,
    q: RatMatrix,
    codec: Option<Codec>,
}

impl Scheme {
    pub fn build(spec: SchemeSpec) -> Result<Self> {
        spec.validate()?;
        let d = spec.classes();
        let p = match spec {
            SchemeSpec::Hamming { d, q } => krawtchouk(d, q),
            SchemeSpec::Johnson { n, d } => eberlein(n, d),
        };
        let vertex_count = match spec {
            SchemeSpec::Hamming { d, q } => num_traits::pow(BigInt::from(q), d),
            SchemeSpec::Johnson { n, d } => binomial(n as i64, d as i64),
        };
        let q = p.inverse()?.scale(&big(vertex_count.clone()));
        let valencies: Vec<BigInt> = (0..=d).map(|i| p.get(i, 0).to_integer()).collect();
        let multiplicities = (0..=d)
            .map(|j| {
                let m = q.get(j, 0);
                if !m.is_integer() {
                    return Err(Error::Config(format!("non-integral multiplicity m_{j}")));
                }
                Ok(m.to_integer())
            })
            .collect::<Result<Vec<_>>>()?;
        let codec = match spec {
            SchemeSpec::Hamming { d, q } => {
                let digit_bits = 32 - (q - 1).leading_zeros();
                if (d as u32) * digit_bits <= 128 {
                    let mut low_mask = 0u128;
                    for k in 0..d {
                        low_mask |= 1u128 << (k as u32 * digit_bits);
                    }
                    Some(Codec::Hamming { d, q, digit_bits, low_mask })
                } else {
                    None
                }
            }
            SchemeSpec::Johnson { n, d } => (n <= 128).then_some(Codec::Johnson { n, d }),
        };
        Ok(Self { spec, vertex_count, valencies, multiplicities, p, q, codec })
    }

    pub fn hamming(d: usize, q: u32) -> Result<Self> {
        Self::build(SchemeSpec::Hamming { d, q })
    }

    pub fn johnson(n: usize, d: usize) -> Result<Self> {
        Self::build(SchemeSpec::Johnson { n, d })
    }

    pub fn spec(&self) -> SchemeSpec {
        self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    /// Number of classes `D`.
    pub fn classes(&self) -> usize {
        self.spec.classes()
    }

    pub fn vertex_count(&self) -> &BigInt {
        &self.vertex_count
    }

    pub fn vertex_count_u128(&self) -> Option<u128> {
        self.vertex_count.to_u128()
    }

    pub fn vertex_count_rational(&self) -> Rational {
        big(self.vertex_count.clone())
    }

    pub fn valencies(&self) -> &[BigInt] {
        &self.valencies
    }

    pub fn valency_u128(&self, i: usize) -> u128 {
        self.valencies[i].to_u128().unwrap_or(u128::MAX)
    }

    pub fn multiplicities(&self) -> &[BigInt] {
        &self.multiplicities
    }

    pub fn p(&self) -> &RatMatrix {
        &self.p
    }

    pub fn q(&self) -> &RatMatrix {
        &self.q
    }

    /// Both orderings are the natural `0..=D` for these families.
    pub fn metric_ordering(&self) -> Vec<usize> {
        (0..=self.classes()).collect()
    }

    pub fn cometric_ordering(&self) -> Vec<usize> {
        (0..=self.classes()).collect()
    }

    /// Eigenvalue of `A_1` on `E_j V`.
    pub fn theta(&self, j: usize) -> &Rational {
        self.p.get(1, j)
    }

    /// Eigenvalue of the dual adjacency matrix `A_1^*` on `E_i^* V`.
    pub fn dual_theta(&self, i: usize) -> &Rational {
        self.q.get(1, i)
    }

    /// Whether the graph `(X, R_1)` is bipartite.
    pub fn is_bipartite(&self) -> bool {
        matches!(self.spec, SchemeSpec::Hamming { q: 2, .. })
            || matches!(self.spec, SchemeSpec::Johnson { n: 2, d: 1 })
    }

    /// Whether the scheme is an antipodal double cover (`H(D,2)`, `J(2D,D)`).
    pub fn is_antipodal_double_cover(&self) -> bool {
        match self.spec {
            SchemeSpec::Hamming { q, .. } => q == 2,
            SchemeSpec::Johnson { n, d } => n == 2 * d,
        }
    }

    fn codec(&self) -> Result<Codec> {
        self.codec.ok_or_else(|| {
            Error::Config(format!("{} is too large for the packed vertex codec", self.spec))
        })
    }

    pub fn supports_vertices(&self) -> bool {
        self.codec.is_some()
    }

    /// Encodes a decoded form: digits for Hamming, sorted 1-based elements for Johnson.
    pub fn encode(&self, form: &[u32]) -> Result<Vertex> {
        match self.codec()? {
            Codec::Hamming { d, q, digit_bits, .. } => {
                if form.len() != d {
                    return Err(Error::Vertex(format!("expected {d} digits, got {}", form.len())));
                }
                let mut bits = 0u128;
                for &digit in form {
                    if digit >= q {
                        return Err(Error::Vertex(format!("digit {digit} out of range for q = {q}")));
                    }
                    bits = (bits << digit_bits) | digit as u128;
                }
                Ok(Vertex(bits))
            }
            Codec::Johnson { n, d } => {
                if form.len() != d {
                    return Err(Error::Vertex(format!("expected {d} elements, got {}", form.len())));
                }
                let mut bits = 0u128;
                let mut prev = 0u32;
                for &e in form {
                    if e <= prev || e as usize > n {
                        return Err(Error::Vertex(format!(
                            "elements must be strictly increasing within 1..={n}"
                        )));
                    }
                    bits |= 1u128 << (e - 1);
                    prev = e;
                }
                Ok(Vertex(bits))
            }
        }
    }

    pub fn decode(&self, v: Vertex) -> Vec<u32> {
        match self.codec.expect("vertex exists only for packable schemes") {
            Codec::Hamming { d, digit_bits, .. } => {
                let mask = (1u128 << digit_bits) - 1;
                (0..d)
                    .map(|k| ((v.0 >> ((d - 1 - k) as u32 * digit_bits)) & mask) as u32)
                    .collect()
            }
            Codec::Johnson { n, .. } => {
                (1..=n as u32).filter(|&e| v.0 >> (e - 1) & 1 == 1).collect()
            }
        }
    }

    /// Coordinate `k` of a Hamming word.
    pub fn digit(&self, v: Vertex, k: usize) -> u32 {
        match self.codec.expect("packable") {
            Codec::Hamming { d, digit_bits, .. } => {
                let mask = (1u128 << digit_bits) - 1;
                ((v.0 >> ((d - 1 - k) as u32 * digit_bits)) & mask) as u32
            }
            Codec::Johnson { .. } => (v.0 >> k & 1) as u32,
        }
    }

    /// Lexicographic rank of the decoded form.
    pub fn index(&self, v: Vertex) -> u128 {
        match self.codec.expect("packable") {
            Codec::Hamming { q, .. } => {
                self.decode(v).iter().fold(0u128, |acc, &g| acc * q as u128 + g as u128)
            }
            Codec::Johnson { n, d } => {
                let elems = self.decode(v);
                let mut rank = 0u128;
                let mut prev = 0u32;
                for (pos, &e) in elems.iter().enumerate() {
                    for skipped in prev + 1..e {
                        rank += binomial_u128((n as u32 - skipped) as u64, (d - pos - 1) as u64);
                    }
                    prev = e;
                }
                rank
            }
        }
    }

    pub fn vertex_at(&self, index: u128) -> Result<Vertex> {
        let count = self.vertex_count_u128().unwrap_or(u128::MAX);
        if index >= count {
            return Err(Error::Vertex(format!("index {index} out of range")));
        }
        match self.codec()? {
            Codec::Hamming { d, q, .. } => {
                let mut digits = vec![0u32; d];
                let mut rest = index;
                for k in (0..d).rev() {
                    digits[k] = (rest % q as u128) as u32;
                    rest /= q as u128;
                }
                self.encode(&digits)
            }
            Codec::Johnson { n, d } => {
                let mut elems = Vec::with_capacity(d);
                let mut rest = index;
                let mut next = 1u32;
                for pos in 0..d {
                    loop {
                        let block = binomial_u128((n as u32 - next) as u64, (d - pos - 1) as u64);
                        if rest < block {
                            break;
                        }
                        rest -= block;
                        next += 1;
                    }
                    elems.push(next);
                    next += 1;
                }
                self.encode(&elems)
            }
        }
    }

    /// Vertex of index 0: the zero word or `{1..D}`.
    pub fn origin(&self) -> Vertex {
        self.vertex_at(0).expect("scheme has vertices")
    }

    /// All vertices in index order. Intended for small schemes.
    pub fn vertices(&self) -> Result<Vec<Vertex>> {
        let count = self
            .vertex_count_u128()
            .filter(|&c| c <= 1 << 32)
            .ok_or_else(|| Error::Config(format!("{} is too large to enumerate", self.spec)))?;
        (0..count).map(|i| self.vertex_at(i)).collect()
    }

    #[inline]
    pub fn distance(&self, a: Vertex, b: Vertex) -> usize {
        match self.codec {
            Some(Codec::Hamming { digit_bits, low_mask, .. }) => {
                let x = a.0 ^ b.0;
                let mut folded = x;
                for s in 1..digit_bits {
                    folded |= x >> s;
                }
                (folded & low_mask).count_ones() as usize
            }
            Some(Codec::Johnson { d, .. }) => d - (a.0 & b.0).count_ones() as usize,
            None => unreachable!("vertices exist only for packable schemes"),
        }
    }

    /// Antipode in an antipodal double cover: complement word / complementary set.
    pub fn antipode(&self, v: Vertex) -> Option<Vertex> {
        if !self.is_antipodal_double_cover() {
            return None;
        }
        match self.codec? {
            Codec::Hamming { low_mask, .. } => Some(Vertex(v.0 ^ low_mask)),
            Codec::Johnson { n, .. } => {
                let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
                Some(Vertex(v.0 ^ full))
            }
        }
    }

    /// The `i`-th subconstituent `R_i(x)`, in lexicographic order of decoded forms.
    pub fn sphere(&self, x: Vertex, i: usize) -> Result<Vec<Vertex>> {
        let d = self.classes();
        if i > d {
            return Err(Error::Config(format!("sphere index {i} exceeds D = {d}")));
        }
        let mut out = Vec::new();
        match self.codec()? {
            Codec::Hamming { d, q, digit_bits, .. } => {
                let digit_mask = (1u128 << digit_bits) - 1;
                for positions in Combinations::new(d, i) {
                    let mut offsets = vec![1u32; i];
                    'odometer: loop {
                        let mut bits = x.0;
                        for (&pos, &off) in positions.iter().zip(&offsets) {
                            let shift = (d - 1 - pos) as u32 * digit_bits;
                            let cur = ((bits >> shift) & digit_mask) as u32;
                            let new = (cur + off) % q;
                            bits = (bits & !(digit_mask << shift)) | ((new as u128) << shift);
                        }
                        out.push(Vertex(bits));
                        let mut k = i;
                        while k > 0 {
                            k -= 1;
                            if offsets[k] + 1 < q {
                                offsets[k] += 1;
                                continue 'odometer;
                            }
                            offsets[k] = 1;
                        }
                        break;
                    }
                }
                out.sort_unstable();
            }
            Codec::Johnson { n, .. } => {
                let inside: Vec<u32> = self.decode(x);
                let outside: Vec<u32> =
                    (1..=n as u32).filter(|e| x.0 >> (e - 1) & 1 == 0).collect();
                for drop in Combinations::new(inside.len(), i) {
                    let mut base = x.0;
                    for &k in &drop {
                        base &= !(1u128 << (inside[k] - 1));
                    }
                    for add in Combinations::new(outside.len(), i) {
                        let mut bits = base;
                        for &k in &add {
                            bits |= 1u128 << (outside[k] - 1);
                        }
                        out.push(Vertex(bits));
                    }
                }
                out.sort_unstable_by_key(|v| std::cmp::Reverse(lex_key(v.0, n)));
            }
        }
        Ok(out)
    }

    pub fn format_vertex(&self, v: Vertex) -> String {
        let form = self.decode(v);
        match self.family() {
            Family::Hamming => form.iter().map(|&g| char::from_digit(g, 36).unwrap()).collect(),
            Family::Johnson => {
                form.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            }
        }
    }

    pub fn parse_vertex(&self, s: &str) -> Result<Vertex> {
        let s = s.trim();
        match self.family() {
            Family::Hamming => {
                let digits = s
                    .chars()
                    .map(|c| {
                        c.to_digit(36)
                            .ok_or_else(|| Error::Vertex(format!("bad digit `{c}` in `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.encode(&digits)
            }
            Family::Johnson => {
                let elems = s
                    .split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Vertex(format!("bad element `{e}` in `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.encode(&elems)
            }
        }
    }

    /// Row `j` of `Q` read as the coefficients of `|X|·E_j` in the `A_i` basis.
    pub fn idempotent_coefficients(&self, j: usize) -> &[Rational] {
        self.q.row(j)
    }

    /// Exact check of `P·Q = |X|·I` and the valency/multiplicity sums.
    pub fn check_invariants(&self) -> bool {
        let d = self.classes();
        let n = self.vertex_count_rational();
        let pq = self.p.mul(&self.q);
        let ident_ok = pq == RatMatrix::identity(d + 1).scale(&n);
        let ksum: BigInt = self.valencies.iter().sum();
        let msum: BigInt = self.multiplicities.iter().sum();
        let row0 = (0..=d).all(|j| self.p.get(0, j).is_one());
        ident_ok && ksum == self.vertex_count && msum == self.vertex_count && row0
    }
}

/// Key whose descending order is lexicographic order of sorted subsets.
fn lex_key(bits: u128, n: usize) -> u128 {
    let mut key = 0u128;
    for e in 1..=n {
        if bits >> (e - 1) & 1 == 1 {
            key |= 1u128 << (n - e);
        }
    }
    key
}

fn krawtchouk(d: usize, q: u32) -> RatMatrix {
    let qm1 = BigInt::from(q - 1);
    RatMatrix::from_fn(d + 1, |i, j| {
        let mut acc = BigInt::zero();
        for h in 0..=i {
            let term = binomial(j as i64, h as i64)
                * binomial((d - j) as i64, (i - h) as i64)
                * num_traits::pow(qm1.clone(), i - h);
            if h % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        big(acc)
    })
}

fn eberlein(n: usize, d: usize) -> RatMatrix {
    RatMatrix::from_fn(d + 1, |i, j| {
        let mut acc = BigInt::zero();
        for h in 0..=i {
            let term = binomial(j as i64, h as i64)
                * binomial((d - j) as i64, (i - h) as i64)
                * binomial((n - d - j) as i64, (i - h) as i64);
            if h % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        big(acc)
    })
}

/// Lexicographic `k`-combinations of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
