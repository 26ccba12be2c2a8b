//! Shared numeric helpers: binary entropy, compensated summation, golden search.

/// Binary entropy `h(p) = -p log2 p - (1-p) log2 (1-p)` with `h(0)=h(1)=0`.
pub fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    // fold onto p <= 1/2 (h is symmetric) and use ln_1p for the 1-p part,
    // which keeps absolute accuracy when p is close to 0 or 1
    let p = if p > 0.5 { 1.0 - p } else { p };
    let ln2 = std::f64::consts::LN_2;
    (-(p * p.ln()) - (1.0 - p) * (-p).ln_1p()) / ln2
}

/// `h~(p) = h(4p(1-p)) = h((1-2p)^2)`.
pub fn h_tilde(p: f64) -> f64 {
    h(4.0 * p * (1.0 - p))
}

/// Cross term of the disjoint-conjunction entropy formula:
/// `psi(p,q) = h~(pq) + 4pq (h(p)+h(q)-h(pq))`.
pub fn psi(p: f64, q: f64) -> f64 {
    h_tilde(p * q) + 4.0 * p * q * (h(p) + h(q) - h(p * q))
}

/// Neumaier compensated accumulator. Deterministic for a fixed input order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Shannon entropy (base 2) of the spectral distribution of an integer
/// spectrum: `p(S) = a(S)^2 / N^2`. Terms are accumulated in ascending |a|
/// order with compensation, so results are reproducible bit-for-bit.
pub fn spectral_entropy(coeffs: &[i32], n: u32) -> f64 {
    let nn = (1u64 << n) as f64;
    let mut mags: Vec<u32> = coeffs
        .iter()
        .filter(|&&a| a != 0)
        .map(|&a| a.unsigned_abs())
        .collect();
    mags.sort_unstable();
    let mut acc = Kahan::default();
    for m in mags {
        // -p log2 p = -2 x^2 log2 x for x = |a_int|/N; the ratio is exact
        // (N is a power of two) and log2 near 1 keeps its absolute accuracy
        let x = m as f64 / nn;
        acc.add(-2.0 * (x * x) * x.log2());
    }
    acc.total()
}

/// SplitMix64: the seeded generator behind every randomized suite, so runs
/// are reproducible from a single u64 seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Golden-section maximizer on `[a, b]`, run until the bracket is below `tol`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
