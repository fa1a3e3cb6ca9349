//! Down- and left-compression operators, fixpoint normalization with an
//! audit trail, the rank potential that proves termination, and the
//! large-element statistic used by the per-class edge bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex::{edges_within, Vertex, VertexFamily};

/// The rank of a vertex: the sum of its elements as a subset of [n].
pub fn rank(x: &Vertex) -> u64 {
    x.elements().map(|i| i as u64).sum()
}

/// Total rank over a family. For a left-compressed down-set this equals
/// `edges_within(A, 2)`; the rank-identity suite checks that exhaustively.
pub fn rank_sum(a: &VertexFamily) -> u64 {
    a.iter().map(rank).sum()
}

/// True iff the family is closed under removing elements.
pub fn is_down_set(a: &VertexFamily) -> bool {
    a.iter().all(|x| {
        let bits = x.bits();
        let mut rest = bits;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if !a.contains_bits(bits & !low) {
                return false;
            }
            rest &= rest - 1;
        }
        true
    })
}

/// True iff for every member x and every pair i < j with x ∩ {i,j} = {j},
/// the shifted vertex (x ∪ {i}) ∖ {j} is also a member.
pub fn is_left_compressed(a: &VertexFamily) -> bool {
    let n = a.dim();
    a.iter().all(|x| {
        let bits = x.bits();
        for j in 1..=n {
            if bits & 1 << (j - 1) == 0 {
                continue;
            }
            for i in 1..j {
                if bits & 1 << (i - 1) != 0 {
                    continue;
                }
                let target = (bits & !(1 << (j - 1))) | 1 << (i - 1);
                if !a.contains_bits(target) {
                    return false;
                }
            }
        }
        true
    })
}

/// The left-compression C_{ij} for i < j: every member containing j but not
/// i moves to (x ∪ {i}) ∖ {j} unless that vertex already belongs to the
/// input family. Size is preserved; rank never increases.
pub fn left_compress_step(a: &VertexFamily, i: u32, j: u32) -> Result<VertexFamily> {
    let n = a.dim();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::invalid(format!(
            "left compression needs 1 <= i < j <= n, got i={i} j={j} n={n}"
        )));
    }
    let (ib, jb) = (1u32 << (i - 1), 1u32 << (j - 1));
    let moved = a.iter().map(|x| {
        let bits = x.bits();
        if bits & jb != 0 && bits & ib == 0 {
            let target = (bits & !jb) | ib;
            if !a.contains_bits(target) {
                return target;
            }
        }
        bits
    });
    VertexFamily::from_bits(n, moved.collect::<Vec<_>>())
}

/// The down-compression D_i: every member containing i moves to x ∖ {i}
/// unless that vertex already belongs to the input family.
pub fn down_compress_step(a: &VertexFamily, i: u32) -> Result<VertexFamily> {
    let n = a.dim();
    if !(1 <= i && i <= n) {
        return Err(Error::invalid(format!(
            "down compression needs 1 <= i <= n, got i={i} n={n}"
        )));
    }
    let ib = 1u32 << (i - 1);
    let moved = a.iter().map(|x| {
        let bits = x.bits();
        if bits & ib != 0 && !a.contains_bits(bits & !ib) {
            bits & !ib
        } else {
            bits
        }
    });
    VertexFamily::from_bits(n, moved.collect::<Vec<_>>())
}

/// One compression operator, as recorded in a trace.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum CompressionOp {
    Down { i: u32 },
    Left { i: u32, j: u32 },
}

/// One proper (family-changing) step of a normalization run.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub op: CompressionOp,
    pub rank_sum_before: u64,
    pub rank_sum_after: u64,
    pub edges_before: u64,
    pub edges_after: u64,
}

/// Audit trail of a normalization run: only proper steps are recorded, and
/// the rank sum strictly decreases along them, which is the termination
/// argument made visible.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CompressionTrace {
    pub steps: Vec<TraceStep>,
}

impl CompressionTrace {
    /// One JSON object per step, newline separated.
    pub fn to_jsonl(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("trace step serializes"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// True iff every recorded step strictly decreased the rank sum.
    pub fn rank_sums_strictly_decrease(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.rank_sum_after < s.rank_sum_before)
            && self
                .steps
                .windows(2)
                .all(|w| w[1].rank_sum_before == w[0].rank_sum_after)
    }

    /// True iff no recorded step decreased the edge count.
    pub fn edges_never_decrease(&self) -> bool {
        self.steps.iter().all(|s| s.edges_after >= s.edges_before)
    }
}

/// Repeatedly applies down steps (i = n..1) and then left steps ((i,j) in
/// lexicographic order) until a full sweep changes nothing. The result is a
/// left-compressed down-set of the same size; the trace records rank sums
/// and distance-r edge counts around every proper step.
pub fn normalize(a: &VertexFamily, r: u32) -> Result<(VertexFamily, CompressionTrace)> {
    let n = a.dim();
    if r == 0 || r > n {
        return Err(Error::invalid(format!(
            "normalization trace radius {r} out of range 1..={n}"
        )));
    }
    let mut cur = a.clone();
    let mut trace = CompressionTrace::default();
    let mut record =
        |op: CompressionOp, before: &VertexFamily, after: &VertexFamily| -> Result<()> {
            trace.steps.push(TraceStep {
                op,
                rank_sum_before: rank_sum(before),
                rank_sum_after: rank_sum(after),
                edges_before: edges_within(before, r)?,
                edges_after: edges_within(after, r)?,
            });
            Ok(())
        };
    loop {
        let mut changed = false;
        for i in (1..=n).rev() {
            let next = down_compress_step(&cur, i)?;
            if next != cur {
                record(CompressionOp::Down { i }, &cur, &next)?;
                cur = next;
                changed = true;
            }
        }
        for i in 1..n {
            for j in (i + 1)..=n {
                let next = left_compress_step(&cur, i, j)?;
                if next != cur {
                    record(CompressionOp::Left { i, j }, &cur, &next)?;
                    cur = next;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(is_down_set(&cur) && is_left_compressed(&cur));
    Ok((cur, trace))
}

/// The number of elements of x strictly greater than beta.
pub fn ell_x(x: &Vertex, beta: u32) -> Result<u32> {
    if beta > x.dim() {
        return Err(Error::invalid(format!(
            "threshold {beta} exceeds dimension {}",
            x.dim()
        )));
    }
    Ok(if beta >= 32 {
        0
    } else {
        (x.bits() >> beta).count_ones()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{hamming_ball, initial_segment, odd_tight};

    fn fam(n: u32, sets: &[&[u32]]) -> VertexFamily {
        let members: Vec<Vertex> = sets
            .iter()
            .map(|s| Vertex::from_elements(n, s).unwrap())
            .collect();
        VertexFamily::new(n, members).unwrap()
    }

    #[test]
    fn rank_values() {
        let n = 5;
        assert_eq!(rank(&Vertex::empty(n).unwrap()), 0);
        assert_eq!(rank(&Vertex::from_elements(n, &[1, 3]).unwrap()), 4);
        assert_eq!(rank(&Vertex::from_elements(n, &[2, 4, 5]).unwrap()), 11);
    }

    #[test]
    fn rank_sum_values() {
        assert_eq!(rank_sum(&fam(3, &[&[]])), 0);
        assert_eq!(rank_sum(&fam(3, &[&[], &[1], &[2], &[1, 2]])), 6);
        assert_eq!(rank_sum(&fam(3, &[&[], &[1], &[2], &[3]])), 6);
    }

    #[test]
    fn down_set_predicate() {
        assert!(is_down_set(&fam(2, &[&[], &[1]])));
        assert!(!is_down_set(&fam(2, &[&[1, 2]])));
        assert!(is_down_set(&hamming_ball(4, 1).unwrap()));
        assert!(is_down_set(&VertexFamily::empty(3).unwrap()));
    }

    #[test]
    fn left_compressed_predicate() {
        assert!(is_left_compressed(&fam(2, &[&[], &[1]])));
        assert!(!is_left_compressed(&fam(2, &[&[], &[2]])));
        for m in 0..=16 {
            assert!(is_left_compressed(&initial_segment(4, m).unwrap()));
        }
    }

    #[test]
    fn named_families_are_normal_forms() {
        for n in 1..=12 {
            for k in 0..=n {
                let b = hamming_ball(n, k).unwrap();
                assert!(is_down_set(&b) && is_left_compressed(&b));
                let t = odd_tight(n, k).unwrap();
                assert!(is_down_set(&t) && is_left_compressed(&t));
            }
        }
    }

    #[test]
    fn left_step_examples() {
        assert_eq!(
            left_compress_step(&fam(2, &[&[2]]), 1, 2).unwrap(),
            fam(2, &[&[1]])
        );
        let occupied = fam(3, &[&[1], &[3]]);
        assert_eq!(left_compress_step(&occupied, 1, 3).unwrap(), occupied);
        assert_eq!(
            left_compress_step(&fam(2, &[&[2], &[1, 2]]), 1, 2).unwrap(),
            fam(2, &[&[1], &[1, 2]])
        );
        assert!(left_compress_step(&fam(3, &[&[]]), 2, 2).is_err());
        assert!(left_compress_step(&fam(3, &[&[]]), 3, 1).is_err());
    }

    #[test]
    fn down_step_examples() {
        assert_eq!(
            down_compress_step(&fam(2, &[&[1, 2]]), 2).unwrap(),
            fam(2, &[&[1]])
        );
        let stable = fam(2, &[&[], &[1]]);
        assert_eq!(down_compress_step(&stable, 1).unwrap(), stable);
        // both members move: the membership test is against the input family
        assert_eq!(
            down_compress_step(&fam(2, &[&[1], &[1, 2]]), 1).unwrap(),
            fam(2, &[&[], &[2]])
        );
        assert!(down_compress_step(&fam(2, &[&[]]), 3).is_err());
        assert!(down_compress_step(&fam(2, &[&[]]), 0).is_err());
    }

    #[test]
    fn normalize_examples() {
        let (out, trace) = normalize(&fam(2, &[&[1, 2]]), 2).unwrap();
        assert_eq!(out, fam(2, &[&[]]));
        assert!(!trace.steps.is_empty());
        assert!(trace.rank_sums_strictly_decrease());

        let already = fam(2, &[&[], &[1]]);
        let (out, trace) = normalize(&already, 1).unwrap();
        assert_eq!(out, already);
        assert!(trace.steps.is_empty());

        let empty = VertexFamily::empty(3).unwrap();
        let (out, trace) = normalize(&empty, 2).unwrap();
        assert_eq!(out, empty);
        assert!(trace.steps.is_empty());

        assert!(normalize(&already, 0).is_err());
        assert!(normalize(&already, 3).is_err());
    }

    #[test]
    fn normalize_sweep_small_cube() {
        // every subset of {0,1}^3, every radius: size preserved, fixpoint
        // reached, rank sums strictly decrease, edges never decrease
        for mask in 0u32..(1 << 8) {
            let bits = (0..8u32).filter(|b| mask >> b & 1 == 1);
            let a = VertexFamily::from_bits(3, bits).unwrap();
            for r in 1..=3 {
                let (out, trace) = normalize(&a, r).unwrap();
                assert_eq!(out.len(), a.len());
                assert!(is_down_set(&out) && is_left_compressed(&out));
                assert!(trace.rank_sums_strictly_decrease());
                assert!(trace.edges_never_decrease());
                assert!(edges_within(&out, r).unwrap() >= edges_within(&a, r).unwrap());
            }
        }
    }

    #[test]
    fn ell_x_examples() {
        let n = 8;
        assert_eq!(ell_x(&Vertex::empty(n).unwrap(), 3).unwrap(), 0);
        assert_eq!(
            ell_x(&Vertex::from_elements(n, &[5]).unwrap(), 4).unwrap(),
            1
        );
        assert_eq!(
            ell_x(&Vertex::from_elements(n, &[1, 2, 7, 8]).unwrap(), 6).unwrap(),
            2
        );
        assert_eq!(
            ell_x(&Vertex::from_elements(n, &[8]).unwrap(), 8).unwrap(),
            0
        );
        assert!(ell_x(&Vertex::empty(n).unwrap(), 9).is_err());
    }

    #[test]
    fn trace_serializes_as_json_lines() {
        let (_, trace) = normalize(&fam(2, &[&[2], &[1, 2]]), 2).unwrap();
        let text = trace.to_jsonl();
        assert!(!text.is_empty());
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.get("op").is_some());
            assert!(v.get("rank_sum_before").is_some());
            assert!(v.get("edges_after").is_some());
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_family(n: u32) -> impl Strategy<Value = VertexFamily> {
            prop::collection::btree_set(0u32..(1 << n), 0..=40)
                .prop_map(move |bits| VertexFamily::from_bits(n, bits).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(192))]

            #[test]
            fn steps_preserve_size(a in arb_family(6), i in 1u32..=6, j in 1u32..=6) {
                let d = down_compress_step(&a, i).unwrap();
                prop_assert_eq!(d.len(), a.len());
                prop_assert!(rank_sum(&d) <= rank_sum(&a));
                if i < j {
                    let l = left_compress_step(&a, i, j).unwrap();
                    prop_assert_eq!(l.len(), a.len());
                    prop_assert!(rank_sum(&l) <= rank_sum(&a));
                }
            }

            #[test]
            fn normalize_reaches_fixpoint(a in arb_family(6), r in 1u32..=6) {
                let (out, trace) = normalize(&a, r).unwrap();
                prop_assert_eq!(out.len(), a.len());
                prop_assert!(is_down_set(&out));
                prop_assert!(is_left_compressed(&out));
                prop_assert!(trace.rank_sums_strictly_decrease());
                prop_assert!(rank_sum(&out) <= rank_sum(&a));
            }

            #[test]
            fn down_set_members_have_small_weight(a in arb_family(6)) {
                // every member of a nonempty down-set has weight at most
                // floor(log2 of the size)
                prop_assume!(!a.is_empty());
                let (out, _) = normalize(&a, 1).unwrap();
                let cap = 63 - out.len().leading_zeros();
                prop_assert!(out.iter().all(|x| x.weight() <= cap));
            }
        }
    }
}
