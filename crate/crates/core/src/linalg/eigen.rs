use serde::{Deserialize, Serialize};

use crate::linalg::{norm2, singular_values, ComplexMatrix};
use crate::{Error, Result, C64};

/// Largest dimension accepted by [`spectrum`].
pub const MAX_DIM: usize = 512;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: C64,
    pub algebraic_multiplicity: usize,
    pub semisimple: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    pub cluster_tolerance: f64,
}

impl Spectrum {
    /// Eigenvalues repeated according to multiplicity.
    pub fn values(&self) -> Vec<C64> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.algebraic_multiplicity))
            .collect()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.value.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumConfig {
    pub cluster_tolerance: f64,
    /// Singular values below `rank_tolerance·‖T‖₂` count as zero.
    pub rank_tolerance: f64,
    pub max_dim: usize,
    /// Sweeps allowed per unit of dimension.
    pub sweeps_per_dim: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self { cluster_tolerance: 1e-6, rank_tolerance: 1e-8, max_dim: MAX_DIM, sweeps_per_dim: 100 }
    }
}

pub fn spectrum(t: &ComplexMatrix) -> Result<Spectrum> {
    spectrum_with(t, &SpectrumConfig::default())
}

pub fn spectrum_with(t: &ComplexMatrix, cfg: &SpectrumConfig) -> Result<Spectrum> {
    if t.dim() > cfg.max_dim {
        return Err(Error::InvalidInput(format!("dimension {} exceeds {}", t.dim(), cfg.max_dim)));
    }
    let raw = eigenvalues(t, cfg.sweeps_per_dim * t.dim())?;
    let tnorm = norm2(t);
    let scale = tnorm.max(1.0);
    let clusters = cluster(&raw, cfg.cluster_tolerance * scale, scale);
    let eigenvalues = clusters
        .into_iter()
        .map(|(value, m)| {
            let sv = singular_values(&t.shift(-value));
            let nullity = sv.iter().filter(|&&s| s <= cfg.rank_tolerance * tnorm).count();
            Eigenvalue { value, algebraic_multiplicity: m, semisimple: nullity >= m }
        })
        .collect();
    Ok(Spectrum { eigenvalues, cluster_tolerance: cfg.cluster_tolerance })
}

/// Single-linkage clusters at `tol`, then coarser groups are merged when their spread
/// is what rounding does to a single defective eigenvalue (radius ~ (ε‖T‖)^{1/m}).
fn cluster(raw: &[C64], tol: f64, scale: f64) -> Vec<(C64, usize)> {
    let fine = linkage(raw, tol);
    let coarse = linkage(raw, 1e-3 * scale);
    let mut out = Vec::new();
    for group in coarse {
        let members: Vec<C64> = group.iter().map(|&i| raw[i]).collect();
        let m = members.len();
        let centre = members.iter().sum::<C64>() / m as f64;
        let radius = members.iter().map(|z| (z - centre).norm()).fold(0.0, f64::max);
        if m > 1 && radius <= scale * (1e3 * f64::EPSILON).powf(1.0 / m as f64) {
            out.push((centre, m));
            continue;
        }
        for f in fine.iter().filter(|f| group.contains(&f[0])) {
            let c = f.iter().map(|&i| raw[i]).sum::<C64>() / f.len() as f64;
            out.push((c, f.len()));
        }
    }
    out.sort_by(|a, b| {
        a.0.arg()
            .total_cmp(&b.0.arg())
            .then(a.0.norm().total_cmp(&b.0.norm()))
    });
    out
}

fn linkage(raw: &[C64], tol: f64) -> Vec<Vec<usize>> {
    let n = raw.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], mut i: usize) -> usize {
        while l[i] != i {
            l[i] = l[l[i]];
            i = l[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (raw[i] - raw[j]).norm() <= tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut label, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_of[r]].push(i);
    }
    groups
}

/// Reduces `a` to upper Hessenberg form by Householder reflections.
pub fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { C64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vnorm);
        // H ← (I − 2vv*) H
        for j in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)]).sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * dot * 2.0;
            }
        }
        // H ← H (I − 2vv*)
        for i in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(j, vj)| h[(i, k + 1 + j)] * vj).sum();
            for (j, vj) in v.iter().enumerate() {
                h[(i, k + 1 + j)] -= dot * vj.conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    h
}

/// Eigenvalues (with repetition) by shifted QR on the Hessenberg form.
pub fn eigenvalues(a: &ComplexMatrix, max_sweeps: usize) -> Result<Vec<C64>> {
    let n = a.dim();
    let mut h = hessenberg(a);
    let mut eig = vec![C64::new(0.0, 0.0); n];
    let mut hi = n as isize - 1;
    let mut its = 0usize;
    let mut total = 0usize;
    while hi >= 0 {
        let hiu = hi as usize;
        let mut l = hiu;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let s = if s == 0.0 { h.max_abs() } else { s };
            if h[(l, l - 1)].norm() <= f64::EPSILON * s {
                h[(l, l - 1)] = C64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hiu {
            eig[hiu] = h[(hiu, hiu)];
            hi -= 1;
            its = 0;
            continue;
        }
        total += 1;
        its += 1;
        if total > max_sweeps.max(30) {
            return Err(Error::NoConvergence(format!("QR iteration exceeded {} sweeps", max_sweeps)));
        }
        let mu = if its % 11 == 10 {
            h[(hiu, hiu)] + C64::new(h[(hiu, hiu - 1)].norm() * 0.75, h[(hiu, hiu - 1)].norm() * 0.3)
        } else {
            wilkinson(h[(hiu - 1, hiu - 1)], h[(hiu - 1, hiu)], h[(hiu, hiu - 1)], h[(hiu, hiu)])
        };
        qr_step(&mut h, l, hiu, mu);
    }
    Ok(eig)
}

fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let (l1, l2) = (half_tr + root, half_tr - root);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicitly shifted QR step on the active block `lo..=hi`, done with Givens rotations.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, mu: C64) {
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        for i in lo..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

/// Rotation `[[c, s], [−s̄, c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, (b / nb).conj());
    }
    let r = na.hypot(nb);
    let alpha = a / na;
    (na / r, alpha * b.conj() / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg::random_matrix;

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal() {
        let d = [c64(0.3, 0.0), c64(0.0, 0.5), c64(-0.2, 0.0)];
        let s = spectrum(&ComplexMatrix::from_diag(&d)).unwrap();
        assert_eq!(s.eigenvalues.len(), 3);
        for e in &s.eigenvalues {
            assert!(e.semisimple && e.algebraic_multiplicity == 1);
            assert!(d.iter().any(|x| (x - e.value).norm() < 1e-14));
        }
    }

    #[test]
    fn jordan_is_defective() {
        for m in [2, 3] {
            let s = spectrum(&ComplexMatrix::jordan(c64(1.0, 0.0), m)).unwrap();
            assert_eq!(s.eigenvalues.len(), 1, "size {m}");
            let e = &s.eigenvalues[0];
            assert_eq!(e.algebraic_multiplicity, m);
            assert!(!e.semisimple);
            assert!((e.value - c64(1.0, 0.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn repeated_semisimple() {
        let t = ComplexMatrix::from_diag(&[c64(1.0, 0.0), c64(0.2, 0.0), c64(1.0, 0.0)]);
        let s = spectrum(&t).unwrap();
        let one = s.eigenvalues.iter().find(|e| (e.value - c64(1.0, 0.0)).norm() < 1e-12).unwrap();
        assert_eq!(one.algebraic_multiplicity, 2);
        assert!(one.semisimple);
    }

    #[test]
    fn cube_roots_of_unity() {
        // z³ − 1
        let c = ComplexMatrix::companion(&[c64(-1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]);
        let got = sorted(eigenvalues(&c, 300).unwrap());
        let want = sorted((0..3).map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0)).collect());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-12, "{g} vs {w}");
        }
    }

    #[test]
    fn trace_and_hessenberg_similarity() {
        let a = random_matrix(9, 5, 1.0);
        let h = hessenberg(&a);
        assert!((h.trace() - a.trace()).norm() < 1e-12);
        assert!((h.norm_fro() - a.norm_fro()).abs() < 1e-12);
        for i in 2..9 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], c64(0.0, 0.0));
            }
        }
        let ev = eigenvalues(&a, 900).unwrap();
        let sum: C64 = ev.iter().sum();
        assert!((sum - a.trace()).norm() < 1e-11);
    }

    #[test]
    fn eigenvalues_make_shift_singular() {
        let a = random_matrix(12, 8, 1.0);
        for l in eigenvalues(&a, 1200).unwrap() {
            let sv = singular_values(&a.shift(-l));
            assert!(sv[11] < 1e-12 * sv[0], "{l}");
        }
    }
}
