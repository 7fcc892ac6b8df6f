//! Folding a sequence of updates with a combiner.

use super::Combiner;

/// Left fold of the combine operator starting from the identity; an empty
/// sequence yields the identity.
pub fn fold_updates<C: Combiner>(
    combiner: &C,
    updates: impl IntoIterator<Item = C::Update>,
) -> C::Update {
    updates
        .into_iter()
        .fold(combiner.identity(), |acc, u| combiner.combine(acc, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acc::validate::test_combiners::{MinCombiner, SumCombiner};

    #[test]
    fn min_fold() {
        assert_eq!(fold_updates(&MinCombiner, [5.0, 1.0, 7.0]), 1.0);
    }

    #[test]
    fn empty_sum_fold_is_identity() {
        assert_eq!(fold_updates(&SumCombiner::exact(), core::iter::empty()), 0.0);
    }

    #[test]
    fn min_fold_of_distance_updates() {
        // A vertex holding an infinite distance combined with a proposed 5
        // settles at 5.
        assert_eq!(fold_updates(&MinCombiner, [f64::INFINITY, 5.0]), 5.0);
    }
}
