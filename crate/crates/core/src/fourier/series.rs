//! Spherical partial sums S_N(x) = sum over |k| < N of the projection
//! coefficients times cos(k pi . x), and the divergence scans built on
//! them.
//!
//! Off-center sums fold the lattice over sign flips: summing
//! cos(sum_i s_i theta_i) over all sign choices gives
//! 2^m prod_i cos(theta_i), so only the non-negative orthant is
//! enumerated. Center sums collapse to shell counts. The d = 5 center
//! scan streams the five-square counts out of the four-square divisor
//! sieve to reach N in the thousands without materializing the table.

use super::coeff::{projection_coefficient_radial, CoefficientTable, Normalization};
use super::shell::{four_square_counts, ShellTable};
use super::FourierError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Enumeration budget for direct lattice sums (estimated N^d points).
const LATTICE_BUDGET: f64 = 1e9;
/// Largest bucket array (squared radius classes) for off-center scans.
const BUCKET_BUDGET: u64 = 1 << 24;

/// A rational coordinate, kept exact for the scan records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, FourierError> {
        if den == 0 {
            return Err(FourierError::BadRational {
                num,
                den,
                reason: "zero denominator",
            });
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num < -den || num >= den {
            return Err(FourierError::BadRational {
                num,
                den,
                reason: "outside the cube [-1, 1)",
            });
        }
        Ok(Rational { num, den })
    }

    pub fn zero() -> Self {
        Rational { num: 0, den: 1 }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }
}

impl std::str::FromStr for Rational {
    type Err = FourierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason| FourierError::BadRational {
            num: 0,
            den: 0,
            reason,
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let num = p.trim().parse().map_err(|_| bad("unparsable numerator"))?;
                let den = q.trim().parse().map_err(|_| bad("unparsable denominator"))?;
                Rational::new(num, den)
            }
            None => {
                let num = s.trim().parse().map_err(|_| bad("unparsable integer"))?;
                Rational::new(num, 1)
            }
        }
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One scan record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub n: u32,
    pub value: f64,
    pub deviation: f64,
    pub running_max: f64,
}

/// A partial-sum scan at a fixed point over increasing N.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialSumScan {
    pub d: usize,
    pub x: Vec<Rational>,
    /// Target value of the indicator at x.
    pub target: f64,
    pub entries: Vec<ScanEntry>,
}

impl PartialSumScan {
    /// CSV body: `N,S_N,deviation,running_max`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,S_N,deviation,running_max\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{}\n",
                e.n, e.value, e.deviation, e.running_max
            ));
        }
        out
    }

    /// Max-minus-min of S_N over entries with N in [lo, hi].
    pub fn window_amplitude(&self, lo: u32, hi: u32) -> f64 {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for e in self.entries.iter().filter(|e| e.n >= lo && e.n <= hi) {
            min = min.min(e.value);
            max = max.max(e.value);
        }
        if min.is_finite() {
            max - min
        } else {
            0.0
        }
    }

    /// Max deviation over entries with N in [lo, hi].
    pub fn window_max_deviation(&self, lo: u32, hi: u32) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.n >= lo && e.n <= hi)
            .map(|e| e.deviation)
            .fold(0.0, f64::max)
    }
}

fn check_budget(d: usize, n: u32) -> Result<(), FourierError> {
    let estimated = (n as f64).powi(d as i32);
    if estimated > LATTICE_BUDGET {
        return Err(FourierError::BudgetExceeded {
            estimated,
            budget: LATTICE_BUDGET,
        });
    }
    Ok(())
}

/// Folded-orthant enumeration of { k in Z^d_{>=0} : |k|^2 <= budget }.
/// Calls `visit(m, factor)` where factor = 2^{#nonzero} prod cos(k_i pi x_i).
fn fold_orthant(d: usize, budget: u64, x: &[f64], visit: &mut impl FnMut(u64, f64)) {
    let max_k = (budget as f64).sqrt() as usize + 1;
    // cos(k pi x_i) per coordinate.
    let tables: Vec<Vec<f64>> = x
        .iter()
        .map(|xi| {
            (0..=max_k)
                .map(|k| (k as f64 * std::f64::consts::PI * xi).cos())
                .collect()
        })
        .collect();
    fn rec(
        dim: usize,
        d: usize,
        m_acc: u64,
        factor: f64,
        budget: u64,
        tables: &[Vec<f64>],
        visit: &mut impl FnMut(u64, f64),
    ) {
        if dim == d {
            visit(m_acc, factor);
            return;
        }
        let mut k = 0u64;
        loop {
            let m = m_acc + k * k;
            if m > budget {
                break;
            }
            let f = if k == 0 {
                factor
            } else {
                factor * 2.0 * tables[dim][k as usize]
            };
            rec(dim + 1, d, m, f, budget, tables, visit);
            k += 1;
        }
    }
    rec(0, d, 0, 1.0, budget, &tables, visit);
}

/// Direct spherical partial sum at x, enumerating |k| < N.
pub fn partial_sum_at(d: usize, n: u32, x: &[f64]) -> Result<f64, FourierError> {
    if d == 0 {
        return Err(FourierError::BadDimension(d));
    }
    if x.len() != d {
        return Err(FourierError::DimensionMismatch {
            got: x.len(),
            want: d,
        });
    }
    check_budget(d, n)?;
    let budget = (n as u64) * (n as u64) - 1;
    let table = if budget <= 1 << 22 {
        Some(CoefficientTable::build(d, budget, Normalization::Projection)?)
    } else {
        None
    };
    let mut sum = 0.0;
    let mut err = Ok(());
    fold_orthant(d, budget, x, &mut |m, factor| {
        let coeff = match &table {
            Some(t) => t.value(m).unwrap(),
            None => match projection_coefficient_radial(d, m) {
                Ok(c) => c,
                Err(e) => {
                    err = Err(e);
                    0.0
                }
            },
        };
        sum += coeff * factor;
    });
    err?;
    Ok(sum)
}

/// Center partial sum via shell counts: S_N(0) = sum_{m < N^2} r_d(m) c(m).
pub fn partial_sum_center(d: usize, n: u32, table: &ShellTable) -> Result<f64, FourierError> {
    let need = (n as u64) * (n as u64) - 1;
    if table.max_m < need {
        return Err(FourierError::TableTooSmall {
            need,
            have: table.max_m,
        });
    }
    let coeffs = CoefficientTable::build(d, need, Normalization::Projection)?;
    let mut sum = 0.0;
    for m in 0..=need {
        let r = table.count(m).unwrap();
        if r != 0 {
            sum += r as f64 * coeffs.value(m).unwrap();
        }
    }
    Ok(sum)
}

/// Kahan-compensated accumulator.
#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// dst[i] += src[i] with widening, dispatched to the widest vector unit
/// available. The streaming scan spends nearly all of its time here; the
/// baseline x86-64 target only vectorizes two lanes wide.
fn accumulate_widened(dst: &mut [u64], src: &[u32]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx512f") {
            // SAFETY: feature presence checked at runtime.
            unsafe { accumulate_widened_avx512(dst, src) };
            return;
        }
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: feature presence checked at runtime.
            unsafe { accumulate_widened_avx2(dst, src) };
            return;
        }
    }
    accumulate_widened_plain(dst, src);
}

#[inline(always)]
fn accumulate_widened_plain(dst: &mut [u64], src: &[u32]) {
    for (o, &v) in dst.iter_mut().zip(src.iter()) {
        *o += v as u64;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx512f")]
unsafe fn accumulate_widened_avx512(dst: &mut [u64], src: &[u32]) {
    accumulate_widened_plain(dst, src);
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn accumulate_widened_avx2(dst: &mut [u64], src: &[u32]) {
    accumulate_widened_plain(dst, src);
}

/// dst[i] += src[i] in u32; callers bound the number of accumulated terms
/// so the lane sums cannot overflow.
fn accumulate_u32(dst: &mut [u32], src: &[u32]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx512f") {
            // SAFETY: feature presence checked at runtime.
            unsafe { accumulate_u32_avx512(dst, src) };
            return;
        }
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: feature presence checked at runtime.
            unsafe { accumulate_u32_avx2(dst, src) };
            return;
        }
    }
    accumulate_u32_plain(dst, src);
}

#[inline(always)]
fn accumulate_u32_plain(dst: &mut [u32], src: &[u32]) {
    for (o, &v) in dst.iter_mut().zip(src.iter()) {
        *o = o.wrapping_add(v);
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx512f")]
unsafe fn accumulate_u32_avx512(dst: &mut [u32], src: &[u32]) {
    accumulate_u32_plain(dst, src);
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn accumulate_u32_avx2(dst: &mut [u32], src: &[u32]) {
    accumulate_u32_plain(dst, src);
}

/// Projection coefficient for d = 5, inlined for the streaming scan.
fn proj_coeff_d5(m: u64) -> f64 {
    if m == 0 {
        return crate::special::ball_volume(5, 0.5) / 32.0;
    }
    let mf = m as f64;
    let kappa = mf.sqrt();
    let z = kappa * std::f64::consts::FRAC_PI_2;
    let (s, c) = z.sin_cos();
    let inv_z = 1.0 / z;
    let j52 = (2.0 / (std::f64::consts::PI * z)).sqrt()
        * ((3.0 * inv_z * inv_z - 1.0) * s - 3.0 * inv_z * c);
    // kappa^(5/2) = m * m^(1/4)
    j52 / (mf * kappa.sqrt()) / 32.0
}

/// Center partial sums S_N(0) for every N = 1..=n_max in dimensions 4 and
/// 5, streaming the shell counts out of the four-square sieve so no
/// five-square table is materialized.
pub fn center_scan_streaming(d: usize, n_max: u32) -> Result<Vec<f64>, FourierError> {
    if d != 4 && d != 5 {
        return Err(FourierError::UnsupportedStreamingDimension(d));
    }
    let max_m = (n_max as u64) * (n_max as u64) - 1;
    // Checkpoints at m = N^2 - 1.
    let checkpoints: Vec<u64> = (1..=n_max as u64).map(|n| n * n - 1).collect();

    if d == 4 {
        let r4 = four_square_counts(max_m);
        let coeffs = CoefficientTable::build(4, max_m, Normalization::Projection)?;
        let mut out = Vec::with_capacity(n_max as usize);
        let mut acc = Kahan::default();
        let mut next = 0usize;
        for (m, &r) in r4.iter().enumerate() {
            acc.add(r as f64 * coeffs.value(m as u64).unwrap());
            while next < checkpoints.len() && checkpoints[next] == m as u64 {
                out.push(acc.sum);
                next += 1;
            }
        }
        return Ok(out);
    }

    // d = 5: with s(u) = sigma#(u) (s(0) = 0),
    //   r5(m) = 8 ( s(m) + 2 sum_{j >= 1} s(m - j^2) )
    //           + 2 if m is a positive perfect square, and r5(0) = 1.
    // Processed in chunks small enough for the accumulator to stay in L2;
    // each chunk reports its per-checkpoint partial prefixes and its
    // total, folded sequentially afterwards so the result does not depend
    // on the thread count.
    let sigma = super::shell::sigma_no4_counts(max_m);
    const CHUNK: usize = 1 << 17;
    let len = sigma.len();
    let n_chunks = len.div_ceil(CHUNK);
    // u32 lane sums stay exact for `band` accumulations of sigma values.
    let sigma_bound = (5.3 * max_m as f64) as u64 + 2;
    let band = (u64::from(u32::MAX) / sigma_bound).clamp(1, 8) as usize;
    let per_chunk: Vec<(Vec<(usize, f64)>, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let a = ci * CHUNK;
            let b = ((ci + 1) * CHUNK).min(len);
            let mut buf = vec![0u64; b - a];
            let mut narrow = vec![0u32; b - a];
            let mut j = 1usize;
            while j * j < b {
                let band_end = j + band;
                while j < band_end && j * j < b {
                    let shift = j * j;
                    let lo = a.max(shift);
                    accumulate_u32(&mut narrow[lo - a..], &sigma[lo - shift..b - shift]);
                    j += 1;
                }
                accumulate_widened(&mut buf, &narrow);
                narrow.fill(0);
            }
            let mut acc = Kahan::default();
            let mut partials = Vec::new();
            let mut next = checkpoints.partition_point(|&c| c < a as u64);
            // Smallest positive square >= a.
            let mut root = (a as f64).sqrt() as usize;
            while root * root < a || root == 0 {
                root += 1;
            }
            for (i, &pair_sum) in buf.iter().enumerate() {
                let m = a + i;
                let mut r5 = 8 * (sigma[m] as u64 + 2 * pair_sum);
                if m == root * root {
                    r5 += 2; // the (j, u) = (sqrt(m), 0) pair
                    root += 1;
                }
                if m == 0 {
                    r5 = 1;
                }
                acc.add(r5 as f64 * proj_coeff_d5(m as u64));
                while next < checkpoints.len() && checkpoints[next] == m as u64 {
                    partials.push((next, acc.sum));
                    next += 1;
                }
            }
            (partials, acc.sum)
        })
        .collect();

    let mut out = vec![0.0; n_max as usize];
    let mut running = Kahan::default();
    for (partials, total) in per_chunk {
        for (idx, partial) in partials {
            out[idx] = running.sum + partial;
        }
        running.add(total);
    }
    Ok(out)
}

/// Scan of S_N(x) with deviation |S_N(x) - f(x)| and its running maximum,
/// at a rational point x over an increasing list of N.
pub fn divergence_scan(
    d: usize,
    x: &[Rational],
    n_list: &[u32],
) -> Result<PartialSumScan, FourierError> {
    if d == 0 {
        return Err(FourierError::BadDimension(d));
    }
    if x.len() != d {
        return Err(FourierError::DimensionMismatch {
            got: x.len(),
            want: d,
        });
    }
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] == 0 {
        return Err(FourierError::BadScanList);
    }
    let x_f: Vec<f64> = x.iter().map(|r| r.to_f64()).collect();
    let norm_sq: f64 = x_f.iter().map(|v| v * v).sum();
    let target = f64::from(norm_sq <= 0.25);
    let n_max = *n_list.last().unwrap();
    let max_m = (n_max as u64) * (n_max as u64) - 1;

    let values: Vec<f64> = if x.iter().all(|r| r.is_zero()) {
        if d >= 4 {
            let all = center_scan_streaming(d, n_max)?;
            n_list.iter().map(|&n| all[n as usize - 1]).collect()
        } else {
            let table = ShellTable::build(d, max_m)?;
            let coeffs = CoefficientTable::build(d, max_m, Normalization::Projection)?;
            let checkpoints: Vec<u64> = n_list.iter().map(|&n| n as u64 * n as u64 - 1).collect();
            let mut out = Vec::with_capacity(n_list.len());
            let mut acc = Kahan::default();
            let mut next = 0usize;
            for m in 0..=max_m {
                let r = table.count(m).unwrap();
                if r != 0 {
                    acc.add(r as f64 * coeffs.value(m).unwrap());
                }
                while next < checkpoints.len() && checkpoints[next] == m {
                    out.push(acc.sum);
                    next += 1;
                }
            }
            out
        }
    } else {
        check_budget(d, n_max)?;
        if max_m + 1 > BUCKET_BUDGET {
            return Err(FourierError::MemoryBudget {
                need_bytes: (max_m + 1) * 8,
                budget: BUCKET_BUDGET * 8,
            });
        }
        // Bucket the folded cosine factors by squared radius, then prefix.
        let mut buckets = vec![0.0f64; max_m as usize + 1];
        fold_orthant(d, max_m, &x_f, &mut |m, factor| {
            buckets[m as usize] += factor;
        });
        let coeffs = CoefficientTable::build(d, max_m, Normalization::Projection)?;
        let checkpoints: Vec<u64> = n_list.iter().map(|&n| n as u64 * n as u64 - 1).collect();
        let mut out = Vec::with_capacity(n_list.len());
        let mut acc = Kahan::default();
        let mut next = 0usize;
        for (m, &b) in buckets.iter().enumerate() {
            if b != 0.0 {
                acc.add(b * coeffs.value(m as u64).unwrap());
            }
            while next < checkpoints.len() && checkpoints[next] == m as u64 {
                out.push(acc.sum);
                next += 1;
            }
        }
        out
    };

    let mut entries = Vec::with_capacity(n_list.len());
    let mut running_max = 0.0f64;
    for (&n, &value) in n_list.iter().zip(values.iter()) {
        let deviation = (value - target).abs();
        running_max = running_max.max(deviation);
        entries.push(ScanEntry {
            n,
            value,
            deviation,
            running_max,
        });
    }
    Ok(PartialSumScan {
        d,
        x: x.to_vec(),
        target,
        entries,
    })
}

/// Gibbs overshoot of the one-dimensional partial sum: max_x S_N(x) - 1,
/// sampled densely on the high side of the jump at x = 1/2.
pub fn gibbs_overshoot(n: u32) -> Result<f64, FourierError> {
    assert!(n >= 2);
    // Pair amplitudes 2 c(k) with c(k) = raw(k)/2 = sin(k pi/2) / (k pi).
    let amps: Vec<f64> = (1..n as usize)
        .map(|k| 2.0 * (k as f64 * std::f64::consts::FRAC_PI_2).sin() / (k as f64 * std::f64::consts::PI))
        .collect();
    let eval = |x: f64| {
        let mut s = 0.5;
        for (k, &a) in amps.iter().enumerate() {
            s += a * ((k + 1) as f64 * std::f64::consts::PI * x).cos();
        }
        s
    };
    let lo = 0.5 - 4.0 / n as f64;
    let steps = 6000;
    let mut max = f64::NEG_INFINITY;
    for i in 0..steps {
        let x = lo + (0.5 - lo) * i as f64 / steps as f64;
        max = max.max(eval(x));
    }
    Ok(max - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing_and_validation() {
        let r: Rational = "1/4".parse().unwrap();
        assert_eq!((r.num, r.den), (1, 4));
        assert_eq!(r.to_f64(), 0.25);
        let r: Rational = "-3/4".parse().unwrap();
        assert_eq!(r.to_f64(), -0.75);
        let r: Rational = "0".parse().unwrap();
        assert!(r.is_zero());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("5/4".parse::<Rational>().is_err());
        assert!(Rational::new(-4, 4).is_ok()); // -1 is in the cube
        assert!(Rational::new(4, 4).is_err()); // +1 is not
    }

    #[test]
    fn center_equals_direct_small() {
        for d in [2usize, 3] {
            for n in [10u32, 20, 50] {
                let table = ShellTable::build(d, (n as u64).pow(2) - 1).unwrap();
                let center = partial_sum_center(d, n, &table).unwrap();
                let direct = partial_sum_at(d, n, &vec![0.0; d]).unwrap();
                assert!(
                    (center - direct).abs() < 1e-10,
                    "d={d} N={n}: {center} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn center_d1_n2_value() {
        // Shells m = 0 and m = 1 (r_1(1) = 2): S_2(0) = 1/2 + 2/pi.
        let table = ShellTable::build(1, 3).unwrap();
        let s = partial_sum_center(1, 2, &table).unwrap();
        let expect = 0.5 + 2.0 / std::f64::consts::PI;
        assert!((s - expect).abs() < 1e-14, "{s} vs {expect}");
        assert!((partial_sum_at(1, 2, &[0.0]).unwrap() - s).abs() < 1e-14);
    }

    #[test]
    fn n1_is_the_mean() {
        for d in [1usize, 2, 3] {
            let table = ShellTable::build(d, 0).unwrap();
            let s = partial_sum_center(d, 1, &table).unwrap();
            let expect = crate::special::ball_volume(d, 0.5) / (2.0f64).powi(d as i32);
            assert!((s - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn d1_interior_convergence() {
        // Away from the jump the 1-d series converges pointwise.
        let s = partial_sum_at(1, 64, &[0.25]).unwrap();
        assert!((s - 1.0).abs() < 0.01, "S_64(0.25) = {s}");
        let s_outside = partial_sum_at(1, 256, &[0.75]).unwrap();
        assert!(s_outside.abs() < 0.01, "S_256(0.75) = {s_outside}");
    }

    #[test]
    fn symmetry_in_x() {
        for n in [8u32, 17] {
            let a = partial_sum_at(2, n, &[0.3, -0.45]).unwrap();
            let b = partial_sum_at(2, n, &[-0.3, 0.45]).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn budget_guard_rejects_large_d5() {
        assert!(matches!(
            partial_sum_at(5, 64, &[0.0; 5]),
            Err(FourierError::BudgetExceeded { .. })
        ));
        assert!(partial_sum_at(5, 10, &[0.0; 5]).is_ok());
    }

    #[test]
    fn streaming_matches_table_route() {
        for d in [4usize, 5] {
            let scan = center_scan_streaming(d, 40).unwrap();
            let table = ShellTable::build(d, 40 * 40 - 1).unwrap();
            for n in [1u32, 7, 25, 40] {
                let direct = partial_sum_center(d, n, &table).unwrap();
                let streamed = scan[n as usize - 1];
                assert!(
                    (direct - streamed).abs() < 1e-9 * direct.abs().max(1.0),
                    "d={d} N={n}: {streamed} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn scan_records_running_max() {
        let x = vec![Rational::zero(), Rational::zero(), Rational::zero()];
        let scan = divergence_scan(3, &x, &[2, 4, 8, 16, 32]).unwrap();
        assert_eq!(scan.entries.len(), 5);
        assert_eq!(scan.target, 1.0);
        let mut max = 0.0f64;
        for e in &scan.entries {
            max = max.max(e.deviation);
            assert_eq!(e.running_max, max);
        }
    }

    #[test]
    fn scan_d1_quarter_point_converges() {
        let x = vec![Rational::new(1, 4).unwrap()];
        let ns: Vec<u32> = (1..=8).map(|i| 1 << i).collect();
        let scan = divergence_scan(1, &x, &ns).unwrap();
        let last = scan.entries.last().unwrap();
        assert!(last.deviation < 0.01, "deviation {}", last.deviation);
        // Matches the direct evaluation route.
        let direct = partial_sum_at(1, 64, &[0.25]).unwrap();
        let at64 = scan.entries.iter().find(|e| e.n == 64).unwrap();
        assert!((at64.value - direct).abs() < 1e-12);
    }

    #[test]
    fn scan_rejects_bad_lists() {
        let x = vec![Rational::zero()];
        assert!(divergence_scan(1, &x, &[]).is_err());
        assert!(divergence_scan(1, &x, &[4, 4]).is_err());
        assert!(divergence_scan(1, &x, &[8, 4]).is_err());
    }

    #[test]
    fn gibbs_overshoot_near_nine_percent() {
        for n in [64u32, 128, 256] {
            let overshoot = gibbs_overshoot(n).unwrap();
            assert!(
                (0.084..=0.094).contains(&overshoot),
                "N={n}: overshoot {overshoot}"
            );
        }
    }

    #[test]
    fn parseval_cumulative_bounded_by_ball_volume() {
        // sum_k (projection coeff)^2 * 2^d is non-decreasing in N and
        // approaches the ball volume.
        for d in [1usize, 2, 3] {
            let max_m = 900;
            let table = ShellTable::build(d, max_m).unwrap();
            let coeffs = CoefficientTable::build(d, max_m, Normalization::Projection).unwrap();
            let volume = crate::special::ball_volume(d, 0.5);
            let mut acc = 0.0;
            let mut prev = 0.0;
            for m in 0..=max_m {
                let r = table.count(m).unwrap() as f64;
                let c = coeffs.value(m).unwrap();
                acc += r * c * c * (2.0f64).powi(d as i32);
                assert!(acc >= prev);
                assert!(acc <= volume + 1e-12, "d={d}: {acc} > {volume}");
                prev = acc;
            }
            assert!(acc > 0.9 * volume, "d={d}: cumulative {acc} vs {volume}");
        }
    }
}
