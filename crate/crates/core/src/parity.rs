//! Parity of `l_s` without big integers, and the divisibility verdict for
//! `f(n)`.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};

/// `c_v` is odd exactly for these `v`: 0, and everything reachable from 0
/// by `v -> 2v` and `v -> 4v + 1`.
pub fn negligent(v: u64) -> bool {
    let mut v = v;
    if v == 0 {
        return true;
    }
    loop {
        if v == 1 {
            return true;
        }
        match v % 4 {
            3 => return false,
            1 => v = (v - 1) / 4,
            _ => v /= 2,
        }
        if v == 0 {
            return true;
        }
    }
}

/// Same predicate via the expansion `v = Σ 4^i · 2^{l_i}` with
/// nondecreasing `l_i`.
pub fn negligent_digits(v: u64) -> bool {
    let mut v = v;
    let mut prev = 0;
    while v != 0 {
        let l = v.trailing_zeros();
        if l < prev {
            return false;
        }
        v -= 1 << l;
        if !v.is_multiple_of(4) {
            return false;
        }
        v /= 4;
        prev = l;
    }
    true
}

/// `c_v mod 2`.
pub fn parity_c(v: u64) -> u8 {
    u8::from(negligent(v))
}

/// `l_s mod 2`.
pub fn parity_l(s: u64) -> u8 {
    if s == 0 || s.is_multiple_of(2) {
        return 0;
    }
    let v = s / 4;
    if s % 4 == 1 {
        return if v % 2 == 1 { 0 } else { parity_c(v / 2) };
    }
    // s = 4v + 3: the sum S(v) halves while v is odd.
    let mut v = v;
    loop {
        if v % 2 == 1 {
            v = (v - 1) / 2;
            continue;
        }
        let half = v / 2;
        return if half % 2 == 1 { 0 } else { parity_c(half / 2) };
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    DivisibleByN,
    /// Divisible by `n/2` but not by `n`.
    OnlyByHalf,
}

impl Verdict {
    pub fn id(self) -> &'static str {
        match self {
            Verdict::DivisibleByN => "divisible-by-n",
            Verdict::OnlyByHalf => "only-by-half",
        }
    }
}

/// The closed-form family containing an exceptional `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `n = 32v + 10`.
    ThirtyTwo,
    /// `n = 64v + 18`.
    SixtyFour,
    /// `n = 64·2^k·v + 16·2^k + 2` with `k ≥ 1`.
    Doubling { k: u32 },
}

impl Family {
    pub fn formula(self) -> String {
        match self {
            Family::ThirtyTwo => "32v+10".into(),
            Family::SixtyFour => "64v+18".into(),
            Family::Doubling { k } => format!("64*2^{k}*v+16*2^{k}+2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub family: Family,
    pub v: u64,
    pub negligent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisibilityVerdict {
    pub n: u64,
    pub verdict: Verdict,
    /// Present for [`Verdict::OnlyByHalf`].
    pub witness: Option<Witness>,
}

/// Writes `n - 2 = 8·2^j·(4v + 1)` when possible and names the family.
pub fn family_of(n: u64) -> Option<(Family, u64)> {
    if n < 10 || n % 2 == 1 {
        return None;
    }
    let m = n - 2;
    let j = m.trailing_zeros();
    if j < 3 {
        return None;
    }
    let odd = m >> j;
    if odd % 4 != 1 {
        return None;
    }
    let v = (odd - 1) / 4;
    let family = match j - 3 {
        0 => Family::ThirtyTwo,
        1 => Family::SixtyFour,
        k => Family::Doubling { k: k - 1 },
    };
    Some((family, v))
}

/// Whether `f(n)` is divisible by `n`, or only by `n/2`.
pub fn classify_n(n: u64) -> Result<DivisibilityVerdict> {
    if n <= 3 {
        return Err(Error::BelowMinimum { n, minimum: 4 });
    }
    let verdict =
        if n % 4 == 2 && parity_l((n - 2) / 4 - 1) == 1 { Verdict::OnlyByHalf } else { Verdict::DivisibleByN };
    let family = family_of(n).map(|(family, v)| Witness { family, v, negligent: negligent(v) });
    let closed_form = matches!(family, Some(w) if w.negligent);
    if closed_form != (verdict == Verdict::OnlyByHalf) {
        return Err(Error::Invariant(format!("closed form and parity engine disagree at n={n}")));
    }
    let witness = family.filter(|_| verdict == Verdict::OnlyByHalf);
    Ok(DivisibilityVerdict { n, verdict, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{parity, series_tables};
    use alloc::collections::BTreeSet;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn negligent_examples() {
        assert!(negligent(2181));
        assert!(!negligent(3));
        assert!(negligent(0));
        assert!(negligent(5));
        assert!(negligent(1));
        assert!(!negligent(6));
    }

    /// Closure of `{0}` under `v -> 2v` and `v -> 4v + 1`.
    fn closure(limit: u64) -> BTreeSet<u64> {
        let mut seen = BTreeSet::from([0u64]);
        let mut stack = vec![0u64];
        while let Some(v) = stack.pop() {
            for w in [2 * v, 4 * v + 1] {
                if w <= limit && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    #[test]
    fn negligent_three_ways() {
        let limit = 100_000;
        let generated = closure(limit);
        for v in 0..=limit {
            let a = negligent(v);
            assert_eq!(a, negligent_digits(v), "v={v}");
            assert_eq!(a, generated.contains(&v), "v={v}");
            if a {
                assert!(negligent(2 * v) && negligent(4 * v + 1));
            }
        }
    }

    #[test]
    fn c_parity_matches_exact_values() {
        let t = series_tables(300);
        for v in 0..=300 {
            assert_eq!(parity_c(v as u64), parity(&t.c[v]), "c_{v}");
        }
    }

    #[test]
    fn parity_l_examples() {
        assert_eq!(parity_l(0), 0);
        assert_eq!(parity_l(1), 1);
        assert_eq!(parity_l(2), 0);
        assert_eq!(parity_l(3), 1);
    }

    #[test]
    fn parity_l_matches_exact_values() {
        let t = series_tables(512);
        let engine: Vec<u8> = (0..=512).map(parity_l).collect();
        let exact: Vec<u8> = t.l.iter().map(parity).collect();
        assert_eq!(engine, exact);
    }

    #[test]
    fn classify_examples() {
        let ten = classify_n(10).unwrap();
        assert_eq!(ten.verdict, Verdict::OnlyByHalf);
        assert_eq!(ten.witness, Some(Witness { family: Family::ThirtyTwo, v: 0, negligent: true }));
        assert_eq!(classify_n(26).unwrap().verdict, Verdict::DivisibleByN);
        assert_eq!(classify_n(26).unwrap().witness, None);
        assert_eq!(classify_n(69802).unwrap().verdict, Verdict::OnlyByHalf);
        assert_eq!(classify_n(6).unwrap().verdict, Verdict::DivisibleByN);
        assert_eq!(classify_n(9).unwrap().verdict, Verdict::DivisibleByN);
        assert_eq!(classify_n(12).unwrap().verdict, Verdict::DivisibleByN);
        assert_eq!(classify_n(3), Err(Error::BelowMinimum { n: 3, minimum: 4 }));
    }

    #[test]
    fn family_examples() {
        assert_eq!(family_of(18), Some((Family::SixtyFour, 0)));
        assert_eq!(family_of(34), Some((Family::Doubling { k: 1 }, 0)));
        assert_eq!(family_of(42), Some((Family::ThirtyTwo, 1)));
        // 69802 - 2 = 8 · 8725 = 8 · (4·2181 + 1)
        assert_eq!(family_of(69802), Some((Family::ThirtyTwo, 2181)));
        assert_eq!(Family::Doubling { k: 2 }.formula(), "64*2^2*v+16*2^2+2");
        for k in 1..6u32 {
            for v in 0..50u64 {
                let n = 64 * (1 << k) * v + 16 * (1 << k) + 2;
                assert_eq!(family_of(n), Some((Family::Doubling { k }, v)));
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_engine() {
        for n in 4..=100_000u64 {
            let d = classify_n(n).unwrap();
            if d.verdict == Verdict::OnlyByHalf {
                assert_eq!(n % 4, 2);
                assert!(d.witness.unwrap().negligent);
            }
        }
    }
}
