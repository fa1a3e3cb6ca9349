//! Vertices and vertex families of the hypercube, and the pair-counting
//! primitives everything else is built on.
//!
//! A vertex of {0,1}^n is a bit pattern of length n. Coordinate i (1-based,
//! i in [n]) is stored at bit position i-1, so the binary-order value of a
//! vertex is just its bit pattern read as an unsigned integer. Q_n^r is the
//! graph on {0,1}^n joining two vertices whenever their Hamming distance is
//! between 1 and r.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ambient dimension. Vertex patterns live in a u32.
pub const MAX_DIM: u32 = 32;

/// Soft cap on family cardinality so constructions cannot accidentally
/// allocate gigabytes.
pub const MAX_FAMILY: u64 = 1 << 27;

/// A vertex of {0,1}^n: a bit pattern plus its ambient dimension.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    bits: u32,
    dim: u32,
}

impl Vertex {
    /// Build a vertex from its bit pattern. Bits at or above `dim` must be 0.
    pub fn new(bits: u32, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if dim < 32 && bits >> dim != 0 {
            return Err(Error::invalid(format!(
                "bit pattern {bits:#b} does not fit in dimension {dim}"
            )));
        }
        Ok(Vertex { bits, dim })
    }

    /// The empty set, i.e. the all-zero vertex.
    pub fn empty(dim: u32) -> Result<Self> {
        Vertex::new(0, dim)
    }

    /// Build a vertex from 1-based coordinates.
    pub fn from_elements(dim: u32, elements: &[u32]) -> Result<Self> {
        check_dim(dim)?;
        let mut bits = 0u32;
        for &i in elements {
            if i == 0 || i > dim {
                return Err(Error::invalid(format!(
                    "coordinate {i} out of range 1..={dim}"
                )));
            }
            if bits & (1 << (i - 1)) != 0 {
                return Err(Error::invalid(format!("repeated coordinate {i}")));
            }
            bits |= 1 << (i - 1);
        }
        Ok(Vertex { bits, dim })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of coordinates set to 1.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Does the vertex contain 1-based coordinate `i`?
    pub fn contains(&self, i: u32) -> bool {
        i >= 1 && i <= self.dim && self.bits & (1 << (i - 1)) != 0
    }

    /// The 1-based coordinates set to 1, ascending.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.dim).filter(|&i| self.contains(i))
    }

    /// The vertex as a 0/1 string; character at index i-1 is coordinate i.
    pub fn bit_string(&self) -> String {
        (0..self.dim)
            .map(|p| if self.bits & (1 << p) != 0 { '1' } else { '0' })
            .collect()
    }

    /// Parse the string form accepted by the family file format.
    pub fn from_bit_string(s: &str, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if s.len() != dim as usize {
            return Err(Error::invalid(format!(
                "vertex string {s:?} has length {}, expected {dim}",
                s.len()
            )));
        }
        let mut bits = 0u32;
        for (p, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << p,
                '0' => {}
                other => {
                    return Err(Error::invalid(format!(
                        "vertex string {s:?} contains {other:?}, expected only 0/1"
                    )))
                }
            }
        }
        Ok(Vertex { bits, dim })
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({})", self.bit_string())
    }
}

fn check_dim(dim: u32) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::invalid(format!(
            "dimension {dim} out of range 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

/// Hamming distance between two vertices of the same cube.
pub fn hamming_distance(x: &Vertex, y: &Vertex) -> Result<u32> {
    if x.dim != y.dim {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            x.dim, y.dim
        )));
    }
    Ok((x.bits ^ y.bits).count_ones())
}

/// A finite set of vertices of one cube, kept sorted by binary-order value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexFamily {
    dim: u32,
    members: Vec<Vertex>,
}

impl VertexFamily {
    /// Build a family, validating dimensions and rejecting duplicates.
    pub fn new(dim: u32, mut members: Vec<Vertex>) -> Result<Self> {
        check_dim(dim)?;
        for v in &members {
            if v.dim != dim {
                return Err(Error::invalid(format!(
                    "family dimension {dim} but member has dimension {}",
                    v.dim
                )));
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "duplicate vertex {}",
                w[0].bit_string()
            )));
        }
        Ok(VertexFamily { dim, members })
    }

    /// Build a family from raw bit patterns.
    pub fn from_bits<I: IntoIterator<Item = u32>>(dim: u32, bits: I) -> Result<Self> {
        let members = bits
            .into_iter()
            .map(|b| Vertex::new(b, dim))
            .collect::<Result<Vec<_>>>()?;
        VertexFamily::new(dim, members)
    }

    pub fn empty(dim: u32) -> Result<Self> {
        VertexFamily::new(dim, Vec::new())
    }

    /// The whole cube {0,1}^n.
    pub fn full(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if (1u64 << dim) > MAX_FAMILY {
            return Err(Error::limit(format!(
                "full cube of dimension {dim} exceeds the family size cap"
            )));
        }
        VertexFamily::from_bits(dim, 0..(1u32 << dim))
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vertex> {
        self.members.iter()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.dim == self.dim && self.contains_bits(v.bits)
    }

    pub(crate) fn contains_bits(&self, bits: u32) -> bool {
        self.members.binary_search_by_key(&bits, |m| m.bits).is_ok()
    }

    pub(crate) fn member_bits(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().map(|m| m.bits)
    }

    /// Complement within {0,1}^dim.
    pub fn complement(&self) -> Result<Self> {
        let full = 1u64 << self.dim;
        if full > MAX_FAMILY {
            return Err(Error::limit(format!(
                "complement in dimension {} exceeds the family size cap",
                self.dim
            )));
        }
        let bits = (0..full as u32).filter(|b| !self.contains_bits(*b));
        VertexFamily::from_bits(self.dim, bits)
    }
}

/// Degree of Q_n^r: the number of vertices within Hamming distance 1..r of a
/// fixed vertex, i.e. sum_{j=1..r} C(n,j).
pub fn degree(n: u32, r: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if r == 0 || r > n {
        return Err(Error::invalid(format!("radius {r} out of range 1..={n}")));
    }
    let mut total: u128 = 0;
    for j in 1..=r {
        let b = binomial(n as u64, j as u64)
            .ok_or_else(|| Error::invalid("binomial overflow in degree"))?;
        total = total
            .checked_add(b)
            .ok_or_else(|| Error::invalid("degree overflow"))?;
    }
    Ok(total)
}

/// C(n, k) with overflow detection.
pub(crate) fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc.checked_mul((n - j) as u128)?;
        acc /= (j + 1) as u128;
    }
    Some(acc)
}

fn check_radius(a: &VertexFamily, r: u32) -> Result<()> {
    if r == 0 || r > a.dim {
        return Err(Error::invalid(format!(
            "radius {r} out of range 1..={}",
            a.dim
        )));
    }
    Ok(())
}

/// Number of unordered pairs of members of `a` at Hamming distance 1..r,
/// i.e. the edges of Q_n^r induced by `a`.
///
/// Two internal counting paths exist (plain all-pairs, and bucketed by weight
/// so only weight classes within r of each other are compared); they are
/// cross-tested and the public function picks one by family size.
pub fn edges_within(a: &VertexFamily, r: u32) -> Result<u64> {
    check_radius(a, r)?;
    if a.members.len() >= 1024 {
        Ok(edges_within_bucketed(a, r))
    } else {
        Ok(edges_within_all_pairs(a, r))
    }
}

pub(crate) fn edges_within_all_pairs(a: &VertexFamily, r: u32) -> u64 {
    let bits: Vec<u32> = a.member_bits().collect();
    let mut count = 0u64;
    for i in 0..bits.len() {
        for j in (i + 1)..bits.len() {
            let d = (bits[i] ^ bits[j]).count_ones();
            if d <= r {
                count += 1;
            }
        }
    }
    count
}

pub(crate) fn edges_within_bucketed(a: &VertexFamily, r: u32) -> u64 {
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); a.dim as usize + 1];
    for b in a.member_bits() {
        buckets[b.count_ones() as usize].push(b);
    }
    let mut count = 0u64;
    for w1 in 0..buckets.len() {
        for w2 in w1..buckets.len() {
            // members at distance <= r differ in weight by at most r
            if (w2 - w1) as u32 > r {
                continue;
            }
            if w1 == w2 {
                let b = &buckets[w1];
                for i in 0..b.len() {
                    for j in (i + 1)..b.len() {
                        if (b[i] ^ b[j]).count_ones() <= r {
                            count += 1;
                        }
                    }
                }
            } else {
                for &x in &buckets[w1] {
                    for &y in &buckets[w2] {
                        if (x ^ y).count_ones() <= r {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

/// Histogram of pairwise Hamming distances: entry d counts the unordered
/// member pairs at distance exactly d, for d in 0..=n (entry 0 is always
/// zero since members are distinct). Prefix sums give `edges_within` for
/// every radius from a single pass over the pairs.
pub fn distance_histogram(a: &VertexFamily) -> Vec<u64> {
    let mut hist = vec![0u64; a.dim as usize + 1];
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); a.dim as usize + 1];
    for b in a.member_bits() {
        buckets[b.count_ones() as usize].push(b);
    }
    for w1 in 0..buckets.len() {
        let b1 = &buckets[w1];
        for i in 0..b1.len() {
            for j in (i + 1)..b1.len() {
                hist[(b1[i] ^ b1[j]).count_ones() as usize] += 1;
            }
        }
        for b2 in &buckets[(w1 + 1)..] {
            for &x in b1 {
                for &y in b2 {
                    hist[(x ^ y).count_ones() as usize] += 1;
                }
            }
        }
    }
    hist
}

/// Membership structure for boundary walks: a bitset over {0,1}^n.
struct CubeSet {
    words: Vec<u64>,
}

impl CubeSet {
    fn new(a: &VertexFamily) -> Self {
        let n_words = ((1u64 << a.dim) as usize).div_ceil(64);
        let mut words = vec![0u64; n_words];
        for b in a.member_bits() {
            words[(b / 64) as usize] |= 1 << (b % 64);
        }
        CubeSet { words }
    }

    fn contains(&self, bits: u32) -> bool {
        self.words[(bits / 64) as usize] & (1 << (bits % 64)) != 0
    }
}

/// All nonzero masks over n bits of weight 1..=r, via Gosper's hack per weight.
pub(crate) fn delta_masks(n: u32, r: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for w in 1..=r {
        let mut mask = (1u64 << w) - 1;
        let limit = 1u64 << n;
        while mask < limit {
            out.push(mask as u32);
            // Gosper: next mask with the same popcount
            let c = mask & mask.wrapping_neg();
            let rr = mask + c;
            if rr >= limit || c == 0 {
                break;
            }
            mask = (((rr ^ mask) >> 2) / c) | rr;
        }
    }
    out
}

/// Number of ordered pairs (x in A, y outside A) at Hamming distance 1..r:
/// the edge boundary of `a` in Q_n^r. Counted directly by walking the
/// distance-<=r neighborhood of each member; deliberately not derived from
/// `edges_within` so the regularity identity stays a genuine cross-check.
pub fn edge_boundary(a: &VertexFamily, r: u32) -> Result<u64> {
    check_radius(a, r)?;
    let deltas = delta_masks(a.dim, r);
    let set = CubeSet::new(a);
    let mut count = 0u64;
    for x in a.member_bits() {
        for &d in &deltas {
            if !set.contains(x ^ d) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The regularity identity of Q_n^r: 2 e(A) + |boundary(A)| = degree(n,r) |A|.
/// Both sides are computed by independent counting paths.
pub fn check_regularity_identity(a: &VertexFamily, r: u32) -> Result<bool> {
    let e = edges_within(a, r)?;
    let b = edge_boundary(a, r)?;
    let d = degree(a.dim, r)?;
    Ok(2 * e as u128 + b as u128 == d * a.len() as u128)
}

/// An unordered pair class (b, a): b = |x \ y|, a = |y \ x|, normalized so
/// b >= a. The Hamming distance of the pair is b + a.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct PairClass {
    pub b: u32,
    pub a: u32,
}

impl PairClass {
    pub fn new(b: u32, a: u32) -> Result<Self> {
        if b < a {
            return Err(Error::invalid(format!(
                "pair class ({b},{a}) violates b >= a"
            )));
        }
        Ok(PairClass { b, a })
    }

    /// Classify an unordered pair by its private-element counts.
    pub fn of(x: &Vertex, y: &Vertex) -> Result<Self> {
        if x.dim != y.dim {
            return Err(Error::invalid("dimension mismatch in pair class"));
        }
        let bx = (x.bits & !y.bits).count_ones();
        let by = (y.bits & !x.bits).count_ones();
        Ok(PairClass {
            b: bx.max(by),
            a: bx.min(by),
        })
    }

    pub fn distance(&self) -> u32 {
        self.b + self.a
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.a)
    }
}

/// Counts of member pairs by pair class, for all classes with
/// 1 <= b + a <= rmax. The classes partition the induced edge set of
/// Q_n^rmax, so the counts sum to edges_within(A, rmax).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeDecomposition {
    pub rmax: u32,
    pub counts: BTreeMap<PairClass, u64>,
}

impl EdgeDecomposition {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, b: u32, a: u32) -> u64 {
        self.counts.get(&PairClass { b, a }).copied().unwrap_or(0)
    }
}

impl Serialize for EdgeDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            b: u32,
            a: u32,
            count: u64,
        }
        let entries: Vec<Entry> = self
            .counts
            .iter()
            .map(|(c, &count)| Entry {
                b: c.b,
                a: c.a,
                count,
            })
            .collect();
        let mut s = serializer.serialize_struct("EdgeDecomposition", 2)?;
        s.serialize_field("rmax", &self.rmax)?;
        s.serialize_field("counts", &entries)?;
        s.end()
    }
}

/// Decompose the induced edges of Q_n^rmax on `a` by pair class.
pub fn edge_decomposition(a: &VertexFamily, rmax: u32) -> Result<EdgeDecomposition> {
    check_radius(a, rmax)?;
    let bits: Vec<u32> = a.member_bits().collect();
    let mut counts: BTreeMap<PairClass, u64> = BTreeMap::new();
    for i in 0..bits.len() {
        for j in (i + 1)..bits.len() {
            let bx = (bits[i] & !bits[j]).count_ones();
            let by = (bits[j] & !bits[i]).count_ones();
            let d = bx + by;
            if d >= 1 && d <= rmax {
                let class = PairClass {
                    b: bx.max(by),
                    a: bx.min(by),
                };
                *counts.entry(class).or_insert(0) += 1;
            }
        }
    }
    Ok(EdgeDecomposition { rmax, counts })
}

/// On-disk family format: {"n": 4, "vertices": ["0110", ...]} where the
/// character at string index i-1 is coordinate i.
#[derive(Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: u32,
    pub vertices: Vec<String>,
}

impl VertexFamily {
    pub fn to_json(&self) -> String {
        let doc = FamilyJson {
            n: self.dim,
            vertices: self.members.iter().map(|v| v.bit_string()).collect(),
        };
        serde_json::to_string(&doc).expect("family serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FamilyJson =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("family JSON: {e}")))?;
        let members = doc
            .vertices
            .iter()
            .map(|s| Vertex::from_bit_string(s, doc.n))
            .collect::<Result<Vec<_>>>()?;
        VertexFamily::new(doc.n, members)
    }
}

impl Serialize for VertexFamily {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        FamilyJson {
            n: self.dim,
            vertices: self.members.iter().map(|v| v.bit_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexFamily {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = FamilyJson::deserialize(deserializer)?;
        let members = doc
            .vertices
            .iter()
            .map(|s| Vertex::from_bit_string(s, doc.n))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        VertexFamily::new(doc.n, members).map_err(serde::de::Error::custom)
    }
}
