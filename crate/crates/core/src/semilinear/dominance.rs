use super::DominanceInstance;

/// Below this many candidate pairs the recursion switches to direct comparison.
const BRUTE_PAIRS: usize = 256;

/// Number of pairs `(x, y) ∈ U₁ × U₂` with `x ≺ y` in every coordinate.
///
/// Splits the combined point set at a median value of the last active
/// coordinate. Points sharing that value stay on one side, so every pair
/// straddling the cut is strictly ordered in that coordinate and is
/// counted by the same problem one dimension down. A coordinate on which
/// all points agree admits no strict pair at all.
pub fn count_dominance_edges(inst: &DominanceInstance) -> u64 {
    let a: Vec<usize> = (0..inst.u1.len()).collect();
    let b: Vec<usize> = (0..inst.u2.len()).collect();
    count(inst, a, b, inst.s)
}

/// All-pairs oracle.
pub fn count_dominance_edges_naive(inst: &DominanceInstance) -> u64 {
    let mut total = 0;
    for x in &inst.u1 {
        for y in &inst.u2 {
            total += DominanceInstance::dominates(x, y) as u64;
        }
    }
    total
}

fn count(inst: &DominanceInstance, a: Vec<usize>, b: Vec<usize>, dims: usize) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    if dims == 0 {
        return (a.len() * b.len()) as u64;
    }
    if a.len() * b.len() <= BRUTE_PAIRS {
        return a
            .iter()
            .map(|&i| {
                b.iter().filter(|&&j| (0..dims).all(|k| inst.u1[i][k] < inst.u2[j][k])).count() as u64
            })
            .sum();
    }
    let k = dims - 1;
    if dims == 1 {
        return count_line(inst, &a, &b);
    }
    let mut vals: Vec<f64> = a.iter().map(|&i| inst.u1[i][k]).chain(b.iter().map(|&j| inst.u2[j][k])).collect();
    vals.sort_by(f64::total_cmp);
    let med = vals[vals.len() / 2];
    // lower side gets `< med`, or `≤ med` when nothing lies strictly below
    let strict = vals[0] < med;
    let low = |v: f64| if strict { v < med } else { v <= med };
    if !strict && vals[vals.len() - 1] == med {
        return 0;
    }
    let (a_lo, a_hi): (Vec<usize>, Vec<usize>) = a.into_iter().partition(|&i| low(inst.u1[i][k]));
    let (b_lo, b_hi): (Vec<usize>, Vec<usize>) = b.into_iter().partition(|&j| low(inst.u2[j][k]));
    let cross = count(inst, a_lo.clone(), b_hi.clone(), k);
    cross + count(inst, a_lo, b_lo, dims) + count(inst, a_hi, b_hi, dims)
}

/// One coordinate: merge-count `x < y` after sorting.
fn count_line(inst: &DominanceInstance, a: &[usize], b: &[usize]) -> u64 {
    let mut xs: Vec<f64> = a.iter().map(|&i| inst.u1[i][0]).collect();
    let mut ys: Vec<f64> = b.iter().map(|&j| inst.u2[j][0]).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let mut below = 0usize;
    let mut total = 0u64;
    for y in ys {
        while below < xs.len() && xs[below] < y {
            below += 1;
        }
        total += below as u64;
    }
    total
}
