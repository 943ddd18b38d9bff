//! Embedded Conway polynomial table.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::nt;

const TABLE: &str = include_str!("../../data/conway.txt");

fn table() -> &'static HashMap<(u64, u32), Vec<u32>> {
    static TABLE_CELL: OnceLock<HashMap<(u64, u32), Vec<u32>>> = OnceLock::new();
    TABLE_CELL.get_or_init(|| parse_table(TABLE).expect("embedded Conway table is well formed"))
}

/// Parses lines of the form `p k c0 c1 ... ck`; blank lines and `#` comments are skipped.
pub fn parse_table(text: &str) -> Result<HashMap<(u64, u32), Vec<u32>>, String> {
    let mut out = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(str::parse::<u64>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        if nums.len() < 3 {
            return Err(format!("line {}: too few fields", lineno + 1));
        }
        let (p, k) = (nums[0], nums[1] as u32);
        let coeffs: Vec<u32> = nums[2..].iter().map(|&c| c as u32).collect();
        if coeffs.len() != k as usize + 1 || coeffs[k as usize] != 1 {
            return Err(format!("line {}: expected monic degree-{k} polynomial", lineno + 1));
        }
        out.insert((p, k), coeffs);
    }
    Ok(out)
}

/// Conway polynomial for `F_{p^k}`, constant term first.
///
/// Degree one is computed directly as `x - g` with `g` the least primitive root.
pub fn conway_polynomial(p: u64, k: u32) -> Option<Vec<u32>> {
    if let Some(c) = table().get(&(p, k)) {
        return Some(c.clone());
    }
    if k == 1 && nt::is_prime(p) {
        let g = nt::least_primitive_root(p);
        return Some(vec![((p - g) % p) as u32, 1]);
    }
    None
}

/// All `(p, k)` pairs carried by the embedded table, sorted.
pub fn table_entries() -> Vec<(u64, u32)> {
    let mut keys: Vec<_> = table().keys().copied().collect();
    keys.sort_unstable();
    keys
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_entries() {
        assert_eq!(conway_polynomial(3, 2), Some(vec![2, 2, 1]));
        assert_eq!(conway_polynomial(2, 8), Some(vec![1, 0, 1, 1, 1, 0, 0, 0, 1]));
        assert_eq!(conway_polynomial(7, 2), Some(vec![3, 6, 1]));
        assert_eq!(conway_polynomial(11, 2), Some(vec![2, 7, 1]));
        // degree one outside the table: x - 3 over F_17
        assert_eq!(conway_polynomial(17, 1), Some(vec![14, 1]));
        assert_eq!(conway_polynomial(4, 1), None);
        assert_eq!(conway_polynomial(2, 21), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_table("2 2 1 1").is_err());
        assert!(parse_table("2 2 1 1 2").is_err());
        assert!(parse_table("# only a comment\n\n").unwrap().is_empty());
    }
}
