//! Exponent vectors with the degree-reverse-lexicographic order.
//!
//! Exponent vectors are dense fixed-width arrays sized to the ring; the
//! variable count is small at desk scale, so comparisons dominate and a
//! flat layout wins.

use std::cmp::Ordering;

/// A monomial as a dense exponent vector. The total degree is cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        let deg = exps.iter().sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            deg,
        }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial::new(exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Vec<u32> = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        Monomial::new(exps)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Degree-reverse-lexicographic comparison: higher total degree wins;
    /// on ties the last nonzero entry of the exponent difference decides,
    /// negative meaning greater.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given total degree, in descending grevlex order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, deg, nvars);
    out.sort_by(|a, b| b.cmp_grevlex(a));
    out
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, rem: u32, nvars: usize) {
    if i == nvars - 1 {
        cur[i] = rem;
        out.push(Monomial::new(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in 0..=rem {
        cur[i] = e;
        fill(out, cur, i + 1, rem - e, nvars);
    }
    cur[i] = 0;
}

/// All monomials inside the box `exp[i] < limits[i]`, in no particular order.
pub fn monomials_in_box(limits: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; limits.len()];
    fill_box(&mut out, &mut cur, 0, limits);
    out
}

fn fill_box(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, limits: &[u32]) {
    if i == limits.len() {
        out.push(Monomial::new(cur.clone()));
        return;
    }
    for e in 0..limits[i] {
        cur[i] = e;
        fill_box(out, cur, i + 1, limits);
    }
    cur[i] = 0;
}

/// The monomials not divisible by any of `leads` (the standard monomials
/// of the monomial ideal the leads generate), or `None` when there are
/// infinitely many. Work is proportional to the output plus the lead
/// count, by slicing on the last variable: within a slice of fixed last
/// exponent `a` only leads with last exponent `≤ a` matter, and that
/// projected set changes at finitely many values of `a`.
pub fn standard_monomials_for_leads(
    leads: &[Monomial],
    nvars: usize,
) -> Option<Vec<Monomial>> {
    let slices: Vec<Vec<u32>> = leads.iter().map(|m| m.exps().to_vec()).collect();
    let raw = std_rec(&slices, nvars)?;
    Some(raw.into_iter().map(Monomial::new).collect())
}

fn std_rec(leads: &[Vec<u32>], dim: usize) -> Option<Vec<Vec<u32>>> {
    if leads.iter().any(|l| l[..dim].iter().all(|&e| e == 0)) {
        return Some(Vec::new());
    }
    if dim == 0 {
        return Some(vec![Vec::new()]);
    }
    let i = dim - 1;
    // cofinite in the last variable only if some lead is a pure power of it
    let bound = leads
        .iter()
        .filter(|l| l[..i].iter().all(|&e| e == 0))
        .map(|l| l[i])
        .min()?;
    let mut cuts: Vec<u32> = leads.iter().map(|l| l[i]).filter(|&v| v < bound).collect();
    cuts.push(0);
    cuts.push(bound);
    cuts.sort_unstable();
    cuts.dedup();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // leads active throughout this slice range
        let mut projected: Vec<Vec<u32>> = leads
            .iter()
            .filter(|l| l[i] <= lo)
            .map(|l| l[..i].to_vec())
            .collect();
        minimalize_by_divisibility(&mut projected);
        let sub = std_rec(&projected, i)?;
        for a in lo..hi {
            for m in &sub {
                let mut full = m.clone();
                full.push(a);
                out.push(full);
            }
        }
    }
    Some(out)
}

fn minimalize_by_divisibility(leads: &mut Vec<Vec<u32>>) {
    let mut keep: Vec<Vec<u32>> = Vec::with_capacity(leads.len());
    'outer: for (idx, l) in leads.iter().enumerate() {
        for (jdx, other) in leads.iter().enumerate() {
            if jdx != idx
                && other.iter().zip(l.iter()).all(|(a, b)| a <= b)
                && (other != l || jdx < idx)
            {
                continue 'outer;
            }
        }
        keep.push(l.clone());
    }
    *leads = keep;
}
