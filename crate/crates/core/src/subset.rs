//! Subsets of `[n]` as bitmasks. Bit `j` stands for the (1-based) index `j + 1`.

/// Largest ground set supported by the exponential-size tables.
pub const MAX_GROUND_SET: usize = 12;

pub type Subset = u32;

#[inline]
pub fn full(n: usize) -> Subset {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

#[inline]
pub fn contains(s: Subset, j: usize) -> bool {
    s >> j & 1 == 1
}

/// Zero-based elements in ascending order.
pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&j| contains(s, j))
}

pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Subset {
    it.into_iter().fold(0, |acc, j| acc | 1 << j)
}

/// All subsets of `[n]` with exactly `k` elements, ascending by mask.
pub fn of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    (0..=full(n)).filter(move |&s| size(s) == k)
}

/// Human-readable key: sorted 1-based indices, `""` for the empty set.
/// Indices are concatenated when `n <= 9` and comma-separated otherwise.
pub fn key(s: Subset, n: usize) -> String {
    let parts: Vec<String> = elements(s).map(|j| (j + 1).to_string()).collect();
    if n <= 9 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

/// Inverse of [`key`].
pub fn parse_key(text: &str, n: usize) -> Option<Subset> {
    let text = text.trim();
    if text.is_empty() {
        return Some(0);
    }
    let indices: Vec<usize> = if n <= 9 && !text.contains(',') {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?
    } else {
        text.split(',')
            .map(|p| p.trim().parse().ok())
            .collect::<Option<_>>()?
    };
    let mut s = 0;
    for i in indices {
        if i == 0 || i > n || contains(s, i - 1) {
            return None;
        }
        s |= 1 << (i - 1);
    }
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip() {
        assert_eq!(key(0, 3), "");
        assert_eq!(key(0b101, 3), "13");
        assert_eq!(parse_key("13", 3), Some(0b101));
        assert_eq!(key(1 << 10 | 1, 11), "1,11");
        assert_eq!(parse_key("1,11", 11), Some(1 << 10 | 1));
        assert_eq!(parse_key("4", 3), None);
        assert_eq!(parse_key("11", 3), None);
    }

    #[test]
    fn size_classes() {
        assert_eq!(of_size(4, 2).count(), 6);
        assert_eq!(elements(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }
}
