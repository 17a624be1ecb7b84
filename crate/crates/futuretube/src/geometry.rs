//! Real and complex Minkowski geometry.
//!
//! Spacetime intervals are row vectors with signature (+,−,…,−); restricted
//! Lorentz boosts act to the *left* on rows, x ↦ xΛ, so successive
//! transformations compose as (xΛ)Λ′ = x(ΛΛ′). Complexified points z = x − iy
//! live in the causal tube when y is timelike; the future tube 𝒯₊ (y in the
//! open future cone) is the domain of every state in this crate.
//!
//! The central scalar is the complex length ζ(z) = √(−z²), taken on the
//! principal branch. Its real part σ extends proper distance and its imaginary
//! part τ extends chronological proper time; on the future tube σ > 0 always.

use num_complex::Complex64;

use crate::error::Error;
use crate::tolerances;
use crate::Result;

/// Spacetime interval with D = 1 + d real components, index 0 being time.
///
/// Supports d ∈ {1, 2, 3}; the crate's quadrature modules use d = 1 and d = 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    len: usize,
    c: [f64; 4],
}

impl FourVector {
    /// Builds an interval from its components (time first).
    ///
    /// Panics if the component count is not 2, 3, or 4, or any entry is
    /// non-finite — both are caller bugs, not data conditions.
    pub fn new(components: &[f64]) -> Self {
        assert!(
            (2..=4).contains(&components.len()),
            "FourVector needs 2..=4 components, got {}",
            components.len()
        );
        assert!(
            components.iter().all(|v| v.is_finite()),
            "FourVector components must be finite"
        );
        let mut c = [0.0; 4];
        c[..components.len()].copy_from_slice(components);
        Self { len: components.len(), c }
    }

    /// Zero vector in d spatial dimensions.
    pub fn zero(d: usize) -> Self {
        assert!((1..=3).contains(&d), "spatial dimension must be 1..=3");
        Self { len: d + 1, c: [0.0; 4] }
    }

    /// Builds (t, 𝐱) from the time component and spatial part.
    pub fn from_time_spatial(t: f64, spatial: &[f64]) -> Self {
        let mut v = Vec::with_capacity(1 + spatial.len());
        v.push(t);
        v.extend_from_slice(spatial);
        Self::new(&v)
    }

    /// Rest-frame timelike vector (λ, 𝟎).
    pub fn rest(lambda: f64, d: usize) -> Self {
        let mut out = Self::zero(d);
        out.c[0] = lambda;
        out
    }

    /// Total component count D = 1 + d.
    pub fn dim(&self) -> usize {
        self.len
    }

    /// Spatial dimension d.
    pub fn d(&self) -> usize {
        self.len - 1
    }

    /// Time component.
    pub fn t(&self) -> f64 {
        self.c[0]
    }

    /// Spatial components.
    pub fn spatial(&self) -> &[f64] {
        &self.c[1..self.len]
    }

    /// Euclidean length of the spatial part.
    pub fn r(&self) -> f64 {
        self.spatial().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Minkowski scalar product a₀b₀ − Σ aᵢbᵢ.
    ///
    /// Panics on dimension mismatch (caller bug).
    pub fn dot(&self, other: &FourVector) -> f64 {
        assert_eq!(
            self.len, other.len,
            "dimension mismatch in Minkowski product"
        );
        let mut s = self.c[0] * other.c[0];
        for i in 1..self.len {
            s -= self.c[i] * other.c[i];
        }
        s
    }

    /// Minkowski square x·x.
    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    /// Sector of the vector: timelike, lightlike (within a tolerance band
    /// scaled by the Euclidean size), spacelike, or exactly zero.
    pub fn classify(&self) -> SectorLabel {
        let euclid2: f64 = self.c[..self.len].iter().map(|v| v * v).sum();
        if euclid2 == 0.0 {
            return SectorLabel::Zero;
        }
        let q = self.norm2();
        let band = tolerances::LIGHTLIKE_BAND * (euclid2 + 1.0);
        if q.abs() <= band {
            if self.c[0] >= 0.0 {
                SectorLabel::FutureLightlike
            } else {
                SectorLabel::PastLightlike
            }
        } else if q > 0.0 {
            if self.c[0] > 0.0 {
                SectorLabel::FutureTimelike
            } else {
                SectorLabel::PastTimelike
            }
        } else {
            SectorLabel::Spacelike
        }
    }

    /// True when the vector lies in the open future cone V₊.
    pub fn is_future_timelike(&self) -> bool {
        self.classify() == SectorLabel::FutureTimelike
    }

    /// Invariant length λ = √(y²) of a timelike vector.
    pub fn timelike_norm(&self) -> Result<f64> {
        match self.classify() {
            SectorLabel::FutureTimelike | SectorLabel::PastTimelike => Ok(self.norm2().sqrt()),
            _ => Err(Error::OutsideTube),
        }
    }

    /// Unit vector ŷ = y/λ along a timelike direction.
    pub fn unit_timelike(&self) -> Result<FourVector> {
        let lambda = self.timelike_norm()?;
        Ok(self.scaled(1.0 / lambda))
    }

    /// Component-wise scaling.
    pub fn scaled(&self, k: f64) -> FourVector {
        let mut out = *self;
        for v in &mut out.c[..self.len] {
            *v *= k;
        }
        out
    }
}

impl std::ops::Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        assert!(i < self.len, "component index {i} out of range");
        &self.c[i]
    }
}

impl std::ops::IndexMut<usize> for FourVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        assert!(i < self.len, "component index {i} out of range");
        &mut self.c[i]
    }
}

impl std::ops::Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        assert_eq!(self.len, rhs.len, "dimension mismatch in addition");
        let mut out = self;
        for i in 0..self.len {
            out.c[i] += rhs.c[i];
        }
        out
    }
}

impl std::ops::Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        assert_eq!(self.len, rhs.len, "dimension mismatch in subtraction");
        let mut out = self;
        for i in 0..self.len {
            out.c[i] -= rhs.c[i];
        }
        out
    }
}

impl std::ops::Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self.scaled(-1.0)
    }
}

/// Lorentz-invariant sector of a spacetime interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorLabel {
    FutureTimelike,
    PastTimelike,
    FutureLightlike,
    PastLightlike,
    Spacelike,
    Zero,
}

/// Restricted Lorentz boost acting to the left on row vectors.
#[derive(Debug, Clone)]
pub struct LorentzBoost {
    dim: usize,
    m: [[f64; 4]; 4],
}

impl LorentzBoost {
    /// Identity transformation in d spatial dimensions.
    pub fn identity(d: usize) -> Self {
        assert!((1..=3).contains(&d));
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { dim: d + 1, m }
    }

    /// Boost with the given rapidity along a unit spatial axis.
    ///
    /// Λ₀₀ = cosh s, Λ₀ⱼ = Λⱼ₀ = sinh s·nⱼ, Λᵢⱼ = δᵢⱼ + (cosh s − 1)nᵢnⱼ.
    pub fn boost(rapidity: f64, axis: &[f64]) -> Result<Self> {
        let d = axis.len();
        if !(1..=3).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        let norm: f64 = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "boost axis must be a unit vector, |n| = {norm}"
            )));
        }
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut out = Self::identity(d);
        out.m[0][0] = ch;
        for j in 0..d {
            out.m[0][j + 1] = sh * axis[j];
            out.m[j + 1][0] = sh * axis[j];
            for i in 0..d {
                out.m[i + 1][j + 1] = if i == j { 1.0 } else { 0.0 } + (ch - 1.0) * axis[i] * axis[j];
            }
        }
        Ok(out)
    }

    /// Pure boost in d = 1 (axis +1).
    pub fn boost1(rapidity: f64) -> Self {
        Self::boost(rapidity, &[1.0]).expect("unit axis")
    }

    /// Applies the transformation to a row vector: x ↦ xΛ.
    pub fn apply(&self, x: &FourVector) -> FourVector {
        assert_eq!(x.dim(), self.dim, "dimension mismatch in boost application");
        let mut out = *x;
        for j in 0..self.dim {
            let mut s = 0.0;
            for i in 0..self.dim {
                s += x.c[i] * self.m[i][j];
            }
            out.c[j] = s;
        }
        out
    }

    /// Composition matching left action: applying `self.then(next)` equals
    /// applying `self` first, then `next`, since (xΛ)Λ′ = x(ΛΛ′).
    pub fn then(&self, next: &LorentzBoost) -> LorentzBoost {
        assert_eq!(self.dim, next.dim);
        let mut m = [[0.0; 4]; 4];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, next_row) in next.m.iter().enumerate().take(self.dim) {
                    m[i][j] += self.m[i][k] * next_row[j];
                }
            }
        }
        LorentzBoost { dim: self.dim, m }
    }

    /// Determinant (restricted group members have det = 1).
    pub fn det(&self) -> f64 {
        det_n(&self.m, self.dim)
    }

    /// Matrix entry (row, column).
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim);
        self.m[i][j]
    }
}

fn det_n(m: &[[f64; 4]; 4], n: usize) -> f64 {
    match n {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            // cofactor expansion along the first row; n ≤ 4 keeps this cheap
            let mut det = 0.0;
            for j in 0..n {
                let mut minor = [[0.0; 4]; 4];
                for (mi, row) in m.iter().enumerate().skip(1).take(n - 1) {
                    let mut mj = 0;
                    for (cj, &v) in row.iter().enumerate().take(n) {
                        if cj != j {
                            minor[mi - 1][mj] = v;
                            mj += 1;
                        }
                    }
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                det += sign * m[0][j] * det_n(&minor, n - 1);
            }
            det
        }
    }
}

/// Complexified spacetime point z = x − iy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexInterval {
    pub x: FourVector,
    pub y: FourVector,
}

impl ComplexInterval {
    pub fn new(x: FourVector, y: FourVector) -> Self {
        assert_eq!(x.dim(), y.dim(), "x and y must share a dimension");
        Self { x, y }
    }

    /// Point −iy on the imaginary axis of the tube.
    pub fn imaginary(y: FourVector) -> Self {
        Self::new(FourVector::zero(y.d()), y)
    }

    pub fn d(&self) -> usize {
        self.x.d()
    }

    /// True when y lies in the open future cone, i.e. z ∈ 𝒯₊.
    pub fn in_future_tube(&self) -> bool {
        self.y.is_future_timelike()
    }

    /// Complex length ζ(z) = √(−z²) on the principal branch.
    ///
    /// −z² = y² − x² + 2i x·y never touches the negative real axis while y is
    /// timelike, so the principal square root is smooth and Re ζ > 0 on the
    /// tube. Errors when y is not timelike (z outside the causal tube).
    pub fn complex_length(&self) -> Result<ComplexLength> {
        match self.y.classify() {
            SectorLabel::FutureTimelike | SectorLabel::PastTimelike => {}
            _ => return Err(Error::OutsideTube),
        }
        let re = self.y.norm2() - self.x.norm2();
        let im = 2.0 * self.x.dot(&self.y);
        let zeta = Complex64::new(re, im).sqrt();
        Ok(ComplexLength::from_zeta(zeta))
    }

    /// Applies a boost to both parts: z ↦ zΛ.
    pub fn boosted(&self, boost: &LorentzBoost) -> Self {
        Self::new(boost.apply(&self.x), boost.apply(&self.y))
    }

    /// Real translation z ↦ z + a.
    pub fn translated(&self, a: &FourVector) -> Self {
        Self::new(self.x + *a, self.y)
    }

    /// Imaginary translation z ↦ z − iv, i.e. y ↦ y + v.
    pub fn translated_imag(&self, v: &FourVector) -> Self {
        Self::new(self.x, self.y + *v)
    }

    /// Interval entering the two-point kernel: w = z − z̄′ = (x−x′) − i(y+y′).
    ///
    /// With the inner product conjugate-linear in its first slot, this is the
    /// interval for which ⟨e_z, e_{z′}⟩ = c·K(m·ζ(w)/ħ); swapping the two
    /// arguments conjugates the overlap.
    ///
    /// For z, z′ in the future tube the imaginary part y + y′ is again future
    /// timelike, so w ∈ 𝒯₊ automatically.
    pub fn kernel_interval(z: &Self, z_prime: &Self) -> Self {
        Self::new(z.x - z_prime.x, z.y + z_prime.y)
    }
}

/// Principal-branch complex length with its real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLength {
    /// ζ = σ + iτ.
    pub zeta: Complex64,
    /// σ = Re ζ, the analytic continuation of proper distance.
    pub sigma: f64,
    /// τ = Im ζ, the analytic continuation of chronological proper time.
    pub tau: f64,
}

impl ComplexLength {
    pub fn from_zeta(zeta: Complex64) -> Self {
        Self { zeta, sigma: zeta.re, tau: zeta.im }
    }
}

/// Proper distance σ(x) = √(−x²) of a spacelike interval, or chronological
/// proper time τ(x) = sgn(t)√(x²) of a timelike one.
pub fn proper_interval(x: &FourVector) -> Result<f64> {
    match x.classify() {
        SectorLabel::Spacelike => Ok((-x.norm2()).sqrt()),
        SectorLabel::FutureTimelike => Ok(x.norm2().sqrt()),
        SectorLabel::PastTimelike => Ok(-x.norm2().sqrt()),
        _ => Err(Error::DegenerateInterval),
    }
}

/// ζ(x − iεu) for a future timelike unit u: the regularized boundary value of
/// the complex length at a real point.
///
/// As ε → 0 this converges, at rate O(ε), to σ(x) for spacelike x and to
/// +i·τ(x) for timelike x — the future-tube boundary prescription.
pub fn boundary_value(x: &FourVector, u: &FourVector, eps: f64) -> Result<Complex64> {
    if eps <= 0.0 {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if !u.is_future_timelike() {
        return Err(Error::OutsideTube);
    }
    let unorm = u.norm2().sqrt();
    if (unorm - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "u must be a unit timelike vector, |u| = {unorm}"
        )));
    }
    let z = ComplexInterval::new(*x, u.scaled(eps));
    Ok(z.complex_length()?.zeta)
}

/// Invariant local coordinates (t_y, r_y) of a real point x relative to a
/// timelike direction y: t_y = ŷ·x and r_y = √(t_y² − x²), so that
/// t_y² − r_y² = x² and the rest frame y = (λ, 𝟎) gives back (t, r).
pub fn local_coords(x: &FourVector, y: &FourVector) -> Result<(f64, f64)> {
    let yhat = y.unit_timelike()?;
    let t_y = yhat.dot(x);
    let r2 = t_y * t_y - x.norm2();
    // r² = (ŷ·x)² − x² ≥ 0 holds exactly for timelike ŷ; allow roundoff only
    let scale = x.c[..x.len].iter().map(|v| v * v).sum::<f64>() + 1.0;
    if r2 < -1e-12 * scale {
        return Err(Error::Domain(format!(
            "local radius squared came out {r2}, below roundoff tolerance"
        )));
    }
    Ok((t_y, r2.max(0.0).sqrt()))
}

/// Sample points on the intersection of the level surfaces of σ and τ for the
/// rest-frame label y = (λ, 𝟎).
///
/// The intersection lies at local time t = στ/λ and radius
/// r = √((σ²−λ²)(τ²+λ²))/λ, so σ ≥ λ is required; σ = λ degenerates to the
/// t-axis point (τ, 𝟎) and σ < λ yields an empty surface.
pub fn level_surface_sample(
    sigma: f64,
    tau: f64,
    lambda: f64,
    n: usize,
    d: usize,
) -> Result<Vec<FourVector>> {
    if lambda <= 0.0 {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    if sigma < lambda {
        return Err(Error::EmptySurface { sigma, lambda });
    }
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let t = sigma * tau / lambda;
    let r = ((sigma * sigma - lambda * lambda) * (tau * tau + lambda * lambda)).sqrt() / lambda;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = match d {
            1 => {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                FourVector::new(&[t, sign * r])
            }
            2 => {
                let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
                FourVector::new(&[t, r * phi.cos(), r * phi.sin()])
            }
            _ => {
                // golden-angle spiral over the 2-sphere of radius r
                let cos_th = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                let sin_th = (1.0 - cos_th * cos_th).sqrt();
                let phi = k as f64 * std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
                FourVector::new(&[t, r * sin_th * phi.cos(), r * sin_th * phi.sin(), r * cos_th])
            }
        };
        out.push(x);
    }
    Ok(out)
}
