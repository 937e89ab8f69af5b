/// Greedy count of disjoint consecutive segments each containing all `a`
/// letters. Closing a segment as early as possible never hurts later
/// segments, so the greedy count is the maximum.
pub fn oned_count_collections(seq: &[u8], a: u32) -> usize {
    let mut seen = vec![false; a as usize];
    let mut distinct = 0;
    let mut count = 0;
    for &x in seq {
        let x = x as usize;
        if x < seen.len() && !seen[x] {
            seen[x] = true;
            distinct += 1;
            if distinct == a as usize {
                count += 1;
                distinct = 0;
                seen.iter_mut().for_each(|s| *s = false);
            }
        }
    }
    count
}

/// Whether every word of length `k` over `a` letters is a subsequence.
pub fn oned_is_omni(seq: &[u8], k: usize, a: u32) -> bool {
    oned_count_collections(seq, a) >= k
}

fn embeds(seq: &[u8], word: &[u8]) -> bool {
    let mut it = seq.iter();
    word.iter().all(|w| it.any(|x| x == w))
}

/// Number of length-`k` words that are not subsequences of `seq`.
pub fn oned_missing_count(seq: &[u8], k: usize, a: u32) -> u64 {
    let total = (a as u64).pow(k as u32);
    let mut word = vec![0u8; k];
    (0..total)
        .filter(|&code| {
            let mut c = code;
            for w in word.iter_mut().rev() {
                *w = (c % a as u64) as u8;
                c /= a as u64;
            }
            !embeds(seq, &word)
        })
        .count() as u64
}

/// Letters of a text as a sequence over 26 symbols; everything that is not
/// an ASCII letter is dropped and case is ignored.
pub fn text_to_sequence(text: &str) -> Vec<u8> {
    text.bytes()
        .filter(u8::is_ascii_alphabetic)
        .map(|b| b.to_ascii_lowercase() - b'a')
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::oned_expected_missing_exact;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn all_sequences(n: usize, a: u32) -> impl Iterator<Item = Vec<u8>> {
        (0..(a as u64).pow(n as u32)).map(move |mut c| {
            (0..n)
                .map(|_| {
                    let d = (c % a as u64) as u8;
                    c /= a as u64;
                    d
                })
                .collect()
        })
    }

    #[test]
    fn small_examples() {
        assert!(oned_is_omni(&[0, 1, 0, 1], 2, 2));
        assert_eq!(oned_count_collections(&[0, 1, 0, 1], 2), 2);
        assert!(!oned_is_omni(&[0, 0, 0, 1], 2, 2));
        assert_eq!(oned_missing_count(&[0, 1, 0, 1], 2, 2), 0);
        assert_eq!(oned_missing_count(&[0, 0, 0, 0], 2, 2), 3);
    }

    #[test]
    fn exhaustive_mean_matches_formula() {
        for n in 0..=12usize {
            for k in 1..=4usize {
                let total: u64 = all_sequences(n, 2).map(|s| oned_missing_count(&s, k, 2)).sum();
                let mean = BigRational::new(BigInt::from(total), BigInt::from(1u64 << n));
                assert_eq!(mean, oned_expected_missing_exact(n as u64, k as u32, 2), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn text_mapping() {
        assert_eq!(text_to_sequence("Ab, z!"), vec![0, 1, 25]);
    }

    proptest! {
        #[test]
        fn greedy_matches_subsequence_check(
            seq in proptest::collection::vec(0u8..3, 0..=14),
            k in 1usize..=3,
            a in 2u32..=3,
        ) {
            let seq: Vec<u8> = seq.into_iter().map(|x| x % a as u8).collect();
            prop_assert_eq!(oned_is_omni(&seq, k, a), oned_missing_count(&seq, k, a) == 0);
        }
    }
}
