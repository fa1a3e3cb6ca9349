//! Named vertex families: initial segments of the binary order, subcubes,
//! Hamming balls, the tight families for the odd-power bound, and
//! Kleitman-West layers and stars.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex::{binomial, Vertex, VertexFamily, MAX_DIM, MAX_FAMILY};

/// The binary-order value of a vertex: sum of 2^(i-1) over elements i, which
/// by the storage convention is the bit pattern read as an unsigned integer.
pub fn binary_order_value(x: &Vertex) -> u64 {
    x.bits() as u64
}

fn check_params(n: u32) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::invalid(format!(
            "dimension {n} out of range 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

fn check_size(m: u64) -> Result<()> {
    if m > MAX_FAMILY {
        return Err(Error::limit(format!(
            "requested family of size {m} exceeds the cap {MAX_FAMILY}"
        )));
    }
    Ok(())
}

/// The first m vertices of {0,1}^n in binary order: bit patterns 0..m.
pub fn initial_segment(n: u32, m: u64) -> Result<VertexFamily> {
    check_params(n)?;
    if m > 1u64 << n {
        return Err(Error::invalid(format!(
            "initial segment of size {m} does not fit in 2^{n} vertices"
        )));
    }
    check_size(m)?;
    VertexFamily::from_bits(n, (0..m).map(|v| v as u32))
}

/// The d-dimensional subcube spanned by coordinates 1..=d: all patterns with
/// coordinates above d equal to 0. Equals the initial segment of size 2^d.
pub fn subcube(n: u32, d: u32) -> Result<VertexFamily> {
    check_params(n)?;
    if d > n {
        return Err(Error::invalid(format!(
            "subcube dimension {d} exceeds ambient dimension {n}"
        )));
    }
    initial_segment(n, 1u64 << d)
}

/// All masks over n bits of weight exactly w, ascending (Gosper's hack).
fn weight_layer_bits(n: u32, w: u32) -> Vec<u32> {
    if w == 0 {
        return vec![0];
    }
    if w > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let limit = 1u64 << n;
    let mut mask = (1u64 << w) - 1;
    while mask < limit {
        out.push(mask as u32);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        if r >= limit {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

/// The Hamming ball of radius k around the all-zero vertex: all patterns of
/// weight at most k.
pub fn hamming_ball(n: u32, k: u32) -> Result<VertexFamily> {
    check_params(n)?;
    if k > n {
        return Err(Error::invalid(format!(
            "ball radius {k} exceeds dimension {n}"
        )));
    }
    let mut size: u64 = 0;
    for w in 0..=k {
        size += binomial(n as u64, w as u64)
            .filter(|&b| b <= u64::MAX as u128)
            .ok_or_else(|| Error::invalid("ball size overflow"))? as u64;
    }
    check_size(size)?;
    let mut bits = Vec::with_capacity(size as usize);
    for w in 0..=k {
        bits.extend(weight_layer_bits(n, w));
    }
    VertexFamily::from_bits(n, bits)
}

/// The tight family for the odd-power bound: all x with |x| <= k and at most
/// one element above k.
pub fn odd_tight(n: u32, k: u32) -> Result<VertexFamily> {
    check_params(n)?;
    if k > n {
        return Err(Error::invalid(format!(
            "weight cap {k} exceeds dimension {n}"
        )));
    }
    if k >= 26 {
        return Err(Error::limit(format!(
            "odd_tight with k = {k} would enumerate 2^{k} small parts"
        )));
    }
    let mut bits: Vec<u32> = Vec::new();
    let low = 1u64 << k;
    for small in 0..low {
        let small = small as u32;
        let w = small.count_ones();
        if w > k {
            continue;
        }
        bits.push(small);
        if w < k {
            for big in (k + 1)..=n {
                bits.push(small | 1 << (big - 1));
            }
        }
    }
    check_size(bits.len() as u64)?;
    VertexFamily::from_bits(n, bits)
}

/// One layer of the Kleitman-West graph: all k-element subsets of [n].
pub fn kw_layer(n: u32, k: u32) -> Result<VertexFamily> {
    check_params(n)?;
    if k > n {
        return Err(Error::invalid(format!(
            "layer weight {k} exceeds dimension {n}"
        )));
    }
    let size = binomial(n as u64, k as u64).ok_or_else(|| Error::invalid("layer size overflow"))?;
    if size > MAX_FAMILY as u128 {
        return Err(Error::limit(format!(
            "layer of size {size} exceeds the cap {MAX_FAMILY}"
        )));
    }
    VertexFamily::from_bits(n, weight_layer_bits(n, k))
}

/// The star in the Kleitman-West layer: all k-element subsets of [n] that
/// contain the fixed s-element set {1,...,s}.
pub fn kw_star(n: u32, k: u32, s: u32) -> Result<VertexFamily> {
    check_params(n)?;
    if k > n || s > k {
        return Err(Error::invalid(format!(
            "star parameters must satisfy s <= k <= n, got s={s} k={k} n={n}"
        )));
    }
    let core = if s == 0 { 0 } else { (1u32 << s) - 1 };
    let rest = weight_layer_bits(n - s, k - s);
    check_size(rest.len() as u64)?;
    VertexFamily::from_bits(n, rest.into_iter().map(|b| (b << s) | core))
}

/// Parameters for building one of the named families; the CLI's
/// `--construct` kinds map onto this.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstructionSpec {
    InitialSegment { n: u32, m: u64 },
    Subcube { n: u32, d: u32 },
    HammingBall { n: u32, k: u32 },
    OddTight { n: u32, k: u32 },
    KwLayer { n: u32, k: u32 },
    KwStar { n: u32, k: u32, s: u32 },
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<VertexFamily> {
        match *self {
            ConstructionSpec::InitialSegment { n, m } => initial_segment(n, m),
            ConstructionSpec::Subcube { n, d } => subcube(n, d),
            ConstructionSpec::HammingBall { n, k } => hamming_ball(n, k),
            ConstructionSpec::OddTight { n, k } => odd_tight(n, k),
            ConstructionSpec::KwLayer { n, k } => kw_layer(n, k),
            ConstructionSpec::KwStar { n, k, s } => kw_star(n, k, s),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionSpec::InitialSegment { .. } => "initial-segment",
            ConstructionSpec::Subcube { .. } => "subcube",
            ConstructionSpec::HammingBall { .. } => "hamming-ball",
            ConstructionSpec::OddTight { .. } => "odd-tight",
            ConstructionSpec::KwLayer { .. } => "kw-layer",
            ConstructionSpec::KwStar { .. } => "kw-star",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::{edges_within, hamming_distance};

    #[test]
    fn binary_order_matches_bits() {
        let v = Vertex::from_elements(4, &[1, 3]).unwrap();
        assert_eq!(binary_order_value(&v), 5);
    }

    #[test]
    fn initial_segment_and_subcube() {
        let seg = initial_segment(4, 8).unwrap();
        let sc = subcube(4, 3).unwrap();
        assert_eq!(seg, sc);
        assert_eq!(sc.len(), 8);
        // members are exactly the patterns with coordinate 4 equal to 0
        assert!(sc.iter().all(|v| !v.contains(4)));
        assert!(initial_segment(3, 9).is_err());
        assert!(subcube(3, 4).is_err());
        // whole-cube edge case
        assert_eq!(subcube(3, 3).unwrap(), VertexFamily::full(3).unwrap());
    }

    #[test]
    fn hamming_ball_frozen_values() {
        let b = hamming_ball(4, 1).unwrap();
        assert_eq!(b.len(), 5);
        // oracle: ball(8,1) has 9 vertices and 36 pairs within distance 2
        let b = hamming_ball(8, 1).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(edges_within(&b, 2).unwrap(), 36);
        assert_eq!(hamming_ball(5, 0).unwrap().len(), 1);
        assert_eq!(hamming_ball(4, 4).unwrap().len(), 16);
        assert!(hamming_ball(4, 5).is_err());
    }

    #[test]
    fn odd_tight_frozen_sizes() {
        // oracle sizes by definition enumeration
        assert_eq!(odd_tight(5, 2).unwrap().len(), 13);
        assert_eq!(odd_tight(6, 2).unwrap().len(), 16);
        assert_eq!(odd_tight(8, 3).unwrap().len(), 43);
        assert_eq!(odd_tight(12, 3).unwrap().len(), 71);
        // definition check: weight cap and at most one big element
        let f = odd_tight(8, 3).unwrap();
        for v in f.iter() {
            assert!(v.weight() <= 3);
            assert!(v.elements().filter(|&i| i > 3).count() <= 1);
        }
    }

    #[test]
    fn kw_layer_and_star() {
        let layer = kw_layer(6, 3).unwrap();
        assert_eq!(layer.len(), 20);
        assert!(layer.iter().all(|v| v.weight() == 3));

        // oracle: the star over {1} in layer 3 of [6] has C(5,2) = 10 members
        // and induces 30 Kleitman-West edges (distance exactly 2)
        let star = kw_star(6, 3, 1).unwrap();
        assert_eq!(star.len(), 10);
        assert!(star.iter().all(|v| v.contains(1) && v.weight() == 3));
        let mut kw_edges = 0;
        let members = star.members();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                if hamming_distance(&members[i], &members[j]).unwrap() == 2 {
                    kw_edges += 1;
                }
            }
        }
        assert_eq!(kw_edges, 30);
        // within one layer, distance <= 2 means distance exactly 2
        assert_eq!(edges_within(&star, 2).unwrap(), 30);

        assert!(kw_star(6, 3, 4).is_err());
        assert_eq!(kw_star(6, 3, 0).unwrap(), kw_layer(6, 3).unwrap());
        assert_eq!(kw_star(6, 3, 3).unwrap().len(), 1);
    }

    #[test]
    fn construction_spec_builds_and_names() {
        let spec = ConstructionSpec::HammingBall { n: 4, k: 1 };
        assert_eq!(spec.build().unwrap().len(), 5);
        assert_eq!(spec.kind(), "hamming-ball");
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"hamming-ball\""));
        let back: ConstructionSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn segment_prefix_of_binary_order(n in 1u32..=10, m in 0u64..=64) {
                let m = m.min(1 << n);
                let f = initial_segment(n, m).unwrap();
                prop_assert_eq!(f.len(), m);
                for (idx, v) in f.iter().enumerate() {
                    prop_assert_eq!(binary_order_value(v), idx as u64);
                }
            }

            #[test]
            fn ball_sizes_are_binomial_sums(n in 1u32..=12, k in 0u32..=12) {
                let k = k.min(n);
                let f = hamming_ball(n, k).unwrap();
                let expect: u64 = (0..=k).map(|w| binomial(n as u64, w as u64).unwrap() as u64).sum();
                prop_assert_eq!(f.len(), expect);
                prop_assert!(f.iter().all(|v| v.weight() <= k));
            }

            #[test]
            fn star_size_is_binomial(n in 1u32..=12, k in 0u32..=12, s in 0u32..=12) {
                let k = k.min(n);
                let s = s.min(k);
                let f = kw_star(n, k, s).unwrap();
                prop_assert_eq!(f.len() as u128, binomial((n - s) as u64, (k - s) as u64).unwrap());
            }
        }
    }
}
