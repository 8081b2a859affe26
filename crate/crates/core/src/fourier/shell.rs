//! Lattice shell counts r_d(m) = #{ k in Z^d : |k|^2 = m }.
//!
//! Built by d-fold convolution of the one-dimensional table (r_1(0) = 1,
//! r_1(j^2) = 2); the four-square counts also come from the divisor sum
//! r_4(m) = 8 * sum of divisors of m not divisible by 4, which the big
//! center scans sieve directly.

use super::FourierError;
use std::io::{Read, Write};
use std::path::Path;

/// Default memory guard for materialized tables: 1 GiB of u64 counts.
const TABLE_BYTE_BUDGET: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellTable {
    pub d: usize,
    /// Counts for 0 <= m <= max_m.
    pub max_m: u64,
    counts: Vec<u64>,
}

impl ShellTable {
    /// Builds the table by iterated sparse convolution with r_1.
    pub fn build(d: usize, max_m: u64) -> Result<Self, FourierError> {
        if d == 0 {
            return Err(FourierError::BadDimension(d));
        }
        let len = max_m + 1;
        let need_bytes = len.saturating_mul(8).saturating_mul(2);
        if need_bytes > TABLE_BYTE_BUDGET {
            return Err(FourierError::MemoryBudget {
                need_bytes,
                budget: TABLE_BYTE_BUDGET,
            });
        }
        let mut counts = one_dim_counts(max_m);
        for _ in 1..d {
            counts = convolve_with_squares(&counts);
        }
        Ok(ShellTable { d, max_m, counts })
    }

    pub fn from_counts(d: usize, counts: Vec<u64>) -> Self {
        ShellTable {
            d,
            max_m: counts.len() as u64 - 1,
            counts,
        }
    }

    pub fn count(&self, m: u64) -> Option<u64> {
        self.counts.get(m as usize).copied()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of lattice points with |k|^2 <= m.
    pub fn cumulative(&self, m: u64) -> u64 {
        self.counts[..=(m as usize).min(self.counts.len() - 1)]
            .iter()
            .sum()
    }

    /// Binary cache format: `d`, `max_m`, then the counts, all u64 LE.
    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        file.write_all(&(self.d as u64).to_le_bytes())?;
        file.write_all(&self.max_m.to_le_bytes())?;
        for c in &self.counts {
            file.write_all(&c.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        let mut file = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut buf = [0u8; 8];
        file.read_exact(&mut buf)?;
        let d = u64::from_le_bytes(buf) as usize;
        file.read_exact(&mut buf)?;
        let max_m = u64::from_le_bytes(buf);
        let mut counts = Vec::with_capacity(max_m as usize + 1);
        for _ in 0..=max_m {
            file.read_exact(&mut buf)?;
            counts.push(u64::from_le_bytes(buf));
        }
        Ok(ShellTable { d, max_m, counts })
    }
}

/// Convenience constructor mirroring the operation name.
pub fn shell_counts(d: usize, max_m: u64) -> Result<ShellTable, FourierError> {
    ShellTable::build(d, max_m)
}

fn one_dim_counts(max_m: u64) -> Vec<u64> {
    let mut counts = vec![0u64; max_m as usize + 1];
    counts[0] = 1;
    let mut j = 1u64;
    while j * j <= max_m {
        counts[(j * j) as usize] = 2;
        j += 1;
    }
    counts
}

/// out[m] = sum over j of w_j * counts[m - j^2] with w_0 = 1, w_j = 2.
/// Each j contributes a contiguous shifted pass, which keeps the memory
/// traffic streaming.
fn convolve_with_squares(counts: &[u64]) -> Vec<u64> {
    let len = counts.len();
    let mut out = counts.to_vec(); // j = 0 term
    let mut j = 1usize;
    while j * j < len {
        let shift = j * j;
        let (dst, src) = (&mut out[shift..], &counts[..len - shift]);
        for (o, &v) in dst.iter_mut().zip(src.iter()) {
            *o += 2 * v;
        }
        j += 1;
    }
    out
}

/// r_4 via the divisor sieve: r_4(0) = 1 and for m >= 1
/// r_4(m) = 8 * sum_{e | m, 4 does not divide e} e.
pub fn four_square_counts(max_m: u64) -> Vec<u64> {
    let sigma = sigma_no4_counts(max_m);
    let mut counts: Vec<u64> = sigma.iter().map(|&s| 8 * s as u64).collect();
    counts[0] = 1;
    counts
}

/// sigma#(m): sum of the divisors of m not divisible by 4 (entry 0 is 0).
///
/// u32 storage keeps the big center scans inside memory bandwidth; the
/// values fit because sigma(m) < 5.3 m < 2^32 for every m <= 8e8.
///
/// Small divisors are sieved into cache-sized output segments (the next
/// multiple of each divisor is carried across segments); divisors above
/// `E0` are visited through their small cofactor q = m/e so the writes
/// stream at stride q instead of jumping by e.
pub(crate) fn sigma_no4_counts(max_m: u64) -> Vec<u32> {
    assert!(max_m <= 800_000_000, "sigma values would overflow u32");
    const E0: usize = 1 << 18;
    const SEGMENT: usize = 1 << 18;
    let len = max_m as usize + 1;
    let mut counts = vec![0u32; len];
    let small_cutoff = E0.min(len - 1);
    let mut next_multiple: Vec<usize> = (0..=small_cutoff).collect();
    let mut seg_start = 0usize;
    while seg_start < len {
        let seg_end = (seg_start + SEGMENT).min(len);
        for (e, next) in next_multiple.iter_mut().enumerate().skip(1) {
            if e.is_multiple_of(4) {
                continue;
            }
            let mut q = *next;
            while q < seg_end {
                counts[q] += e as u32;
                q += e;
            }
            *next = q;
        }
        seg_start = seg_end;
    }
    // Large divisors e > E0 of m = q e have cofactor q <= (len-1) / (E0+1).
    let max_q = (len - 1) / (E0 + 1);
    for q in 1..=max_q {
        let mut e = E0 + 1;
        let mut m = q * e;
        while m < len {
            if !e.is_multiple_of(4) {
                counts[m] += e as u32;
            }
            e += 1;
            m += q;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: enumerate Z^d directly.
    fn brute_force(d: usize, max_m: u64) -> Vec<u64> {
        let mut counts = vec![0u64; max_m as usize + 1];
        let radius = (max_m as f64).sqrt() as i64 + 1;
        fn rec(d: usize, radius: i64, max_m: u64, acc: u64, counts: &mut [u64]) {
            if d == 0 {
                if acc <= max_m {
                    counts[acc as usize] += 1;
                }
                return;
            }
            for k in -radius..=radius {
                let m = acc + (k * k) as u64;
                if m <= max_m {
                    rec(d - 1, radius, max_m, m, counts);
                }
            }
        }
        rec(d, radius, max_m, 0, &mut counts);
        counts
    }

    #[test]
    fn matches_brute_force_small_dimensions() {
        for d in 1..=3 {
            let table = ShellTable::build(d, 100).unwrap();
            assert_eq!(table.counts(), brute_force(d, 100).as_slice());
        }
    }

    #[test]
    fn named_values() {
        let r2 = ShellTable::build(2, 5).unwrap();
        assert_eq!(r2.count(1), Some(4));
        assert_eq!(r2.count(2), Some(4));
        assert_eq!(r2.count(5), Some(8));
        let r3 = ShellTable::build(3, 3).unwrap();
        assert_eq!(r3.count(3), Some(8)); // (+-1, +-1, +-1)
        for d in 1..=5 {
            assert_eq!(ShellTable::build(d, 0).unwrap().count(0), Some(1));
        }
    }

    #[test]
    fn cumulative_matches_ball_count() {
        let table = ShellTable::build(2, 100).unwrap();
        // #{k in Z^2 : |k|^2 <= 100}: Gauss circle value at r = 10.
        assert_eq!(table.cumulative(100), 317);
    }

    #[test]
    fn jacobi_sieve_matches_convolution() {
        let conv = ShellTable::build(4, 50_000).unwrap();
        let sieve = four_square_counts(50_000);
        assert_eq!(conv.counts(), sieve.as_slice());
    }

    #[test]
    fn jacobi_sieve_cofactor_path_matches() {
        // Crosses the large-divisor cutoff so both sieve halves run.
        let max_m = 600_000;
        let conv = ShellTable::build(4, max_m).unwrap();
        let sieve = four_square_counts(max_m);
        assert_eq!(conv.counts(), sieve.as_slice());
    }

    #[test]
    fn memory_budget_enforced() {
        assert!(matches!(
            ShellTable::build(5, 1 << 40),
            Err(FourierError::MemoryBudget { .. })
        ));
    }

    #[test]
    fn save_load_round_trip() {
        let table = ShellTable::build(3, 500).unwrap();
        let dir = std::env::temp_dir().join("ball_approx_shell_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("shell_d3_m500.bin");
        table.save(&path).unwrap();
        let back = ShellTable::load(&path).unwrap();
        assert_eq!(back, table);
        std::fs::remove_file(&path).ok();
    }
}
