use crate::band::{BandSet, Side};

/// Indices whose upper endpoint can be certified: `p = 1` or `ω̄_p < ω̲_{p−1}`.
pub fn restrict_to_gap_indices(outer: &BandSet) -> Vec<usize> {
    (0..outer.len()).filter(|&p| upper_gap(outer, p)).collect()
}

/// Lower-side counterpart: `p = n` or `ω̲_p > ω̄_{p+1}`.
pub fn restrict_to_lower_gap_indices(outer: &BandSet) -> Vec<usize> {
    (0..outer.len()).filter(|&p| lower_gap(outer, p)).collect()
}

/// Gap indices for the given side.
pub fn gap_indices(outer: &BandSet, side: Side) -> Vec<usize> {
    match side {
        Side::Upper => restrict_to_gap_indices(outer),
        Side::Lower => restrict_to_lower_gap_indices(outer),
    }
}

fn upper_gap(outer: &BandSet, p: usize) -> bool {
    p == 0 || outer.bands[p].hi() < outer.bands[p - 1].lo()
}

fn lower_gap(outer: &BandSet, p: usize) -> bool {
    p + 1 == outer.len() || outer.bands[p].lo() > outer.bands[p + 1].hi()
}

/// Exactness flags for the output of a submatrix search.
///
/// An endpoint that was searched is exact when it is `μ̄_1` / `μ̲_n` or when
/// its outer band is separated from the neighbouring one. `known` carries
/// flags that are already known (for instance from vertex enumeration) and
/// is OR-ed in.
pub fn certify_exact(
    outer: &BandSet,
    searched_upper: &[bool],
    searched_lower: &[bool],
    known: &BandSet,
) -> (Vec<bool>, Vec<bool>) {
    let n = outer.len();
    let exact_hi = (0..n)
        .map(|p| (searched_upper[p] && upper_gap(outer, p)) || known.exact_hi.get(p).copied().unwrap_or(false))
        .collect();
    let exact_lo = (0..n)
        .map(|p| (searched_lower[p] && lower_gap(outer, p)) || known.exact_lo.get(p).copied().unwrap_or(false))
        .collect();
    (exact_lo, exact_hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_bands_give_every_index() {
        let outer = BandSet::from_endpoints(&[5.0, 2.0, 0.0], &[6.0, 3.0, 1.0]).unwrap();
        assert_eq!(restrict_to_gap_indices(&outer), vec![0, 1, 2]);
        assert_eq!(restrict_to_lower_gap_indices(&outer), vec![0, 1, 2]);
    }

    #[test]
    fn identical_bands_give_first_only() {
        let outer = BandSet::from_endpoints(&[0.0; 3], &[1.0; 3]).unwrap();
        assert_eq!(restrict_to_gap_indices(&outer), vec![0]);
        assert_eq!(restrict_to_lower_gap_indices(&outer), vec![2]);
        let none = BandSet::new(Vec::new());
        let (lo, hi) = certify_exact(&outer, &[true; 3], &[true; 3], &none);
        assert_eq!(hi, vec![true, false, false]);
        assert_eq!(lo, vec![false, false, true]);
    }

    #[test]
    fn unsearched_endpoints_are_not_flagged() {
        let outer = BandSet::from_endpoints(&[5.0, 2.0], &[6.0, 3.0]).unwrap();
        let none = BandSet::new(Vec::new());
        let (lo, hi) = certify_exact(&outer, &[true, false], &[false, true], &none);
        assert_eq!(hi, vec![true, false]);
        assert_eq!(lo, vec![false, true]);
    }
}
