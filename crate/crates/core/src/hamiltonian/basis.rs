//! Base-3 product basis of a chain of spin-1 sites.
//!
//! Site 1 is the most significant digit of the index. Digit values are
//! `u = 0`, `0 = 1`, `d = 2`, i.e. `s^z = 1 - digit`.

pub const UP: u8 = 0;
pub const FLAT: u8 = 1;
pub const DOWN: u8 = 2;

pub fn dimension(two_n: usize) -> usize {
    3usize.pow(two_n as u32)
}

/// Place value of `site` (1-based) in the index.
pub fn site_stride(two_n: usize, site: usize) -> usize {
    debug_assert!(site >= 1 && site <= two_n);
    3usize.pow((two_n - site) as u32)
}

pub fn digit(index: usize, two_n: usize, site: usize) -> u8 {
    ((index / site_stride(two_n, site)) % 3) as u8
}

pub fn digits(index: usize, two_n: usize) -> Vec<u8> {
    let mut out = vec![0u8; two_n];
    let mut rest = index;
    for d in out.iter_mut().rev() {
        *d = (rest % 3) as u8;
        rest /= 3;
    }
    out
}

pub fn index_of(digits: &[u8]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * 3 + d as usize)
}

pub fn spin(digit: u8) -> i32 {
    1 - digit as i32
}

pub fn total_sz(index: usize, two_n: usize) -> i32 {
    let mut rest = index;
    let mut sz = 0;
    for _ in 0..two_n {
        sz += spin((rest % 3) as u8);
        rest /= 3;
    }
    sz
}

pub fn letter(digit: u8) -> char {
    ['u', '0', 'd'][digit as usize]
}

/// A configuration read as a walk never dips below zero and ends at zero.
pub fn is_motzkin(digits: &[u8]) -> bool {
    let mut h = 0i32;
    for &d in digits {
        h += spin(d);
        if h < 0 {
            return false;
        }
    }
    h == 0
}

/// Indices of all Motzkin configurations, increasing.
pub fn motzkin_configurations(two_n: usize) -> Vec<usize> {
    fn go(left: usize, height: usize, index: usize, out: &mut Vec<usize>) {
        if left == 0 {
            if height == 0 {
                out.push(index);
            }
            return;
        }
        // digits in increasing order keep the output sorted
        if height < left {
            go(left - 1, height + 1, index * 3 + UP as usize, out);
        }
        if height < left {
            go(left - 1, height, index * 3 + FLAT as usize, out);
        }
        if height >= 1 {
            go(left - 1, height - 1, index * 3 + DOWN as usize, out);
        }
    }
    let mut out = Vec::new();
    go(two_n, 0, 0, &mut out);
    out
}
