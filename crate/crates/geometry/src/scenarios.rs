use crate::config::FieldConfig;
use fbg_algebra::{Mat4, Signature, SignatureKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ANGLE_MARGIN: f64 = 1e-6;

fn set_antisym(m: &mut Mat4, a: usize, b: usize, v: f64, sig: &Signature) {
    // A^a_b = v, A^b_a fixed by h-antisymmetry of A^{ab}.
    m[(a, b)] = v;
    m[(b, a)] = -v * sig.diag(b) * sig.diag(a);
}

/// Constant frame `e = 1`, zero connection.
#[derive(Clone, Debug)]
pub struct Flat {
    pub signature: Signature,
}

impl Flat {
    pub fn new(kind: SignatureKind) -> Self {
        Flat { signature: Signature::new(kind) }
    }
}

impl FieldConfig for Flat {
    fn name(&self) -> String {
        format!("flat:signature={}", self.signature.kind().name())
    }

    fn signature(&self) -> Signature {
        self.signature.clone()
    }

    fn vierbein(&self, _x: &[f64; 4]) -> Mat4 {
        Mat4::identity()
    }

    fn connection(&self, _x: &[f64; 4]) -> [Mat4; 4] {
        [Mat4::zeros(); 4]
    }

    fn vierbein_partials(&self, _x: &[f64; 4]) -> Option<[Mat4; 4]> {
        Some([Mat4::zeros(); 4])
    }

    fn connection_partials(&self, _x: &[f64; 4]) -> Option<[[Mat4; 4]; 4]> {
        Some([[Mat4::zeros(); 4]; 4])
    }

    fn has_analytic_partials(&self) -> bool {
        true
    }
}

/// Schwarzschild exterior in coordinates `(t, r, theta, phi)` with the static
/// orthonormal frame and its torsion-free connection.
#[derive(Clone, Debug)]
pub struct Schwarzschild {
    pub mass: f64,
}

impl Schwarzschild {
    pub fn new(mass: f64) -> Self {
        Schwarzschild { mass }
    }

    fn f(&self, r: f64) -> (f64, f64, f64) {
        let m = self.mass;
        (1.0 - 2.0 * m / r, 2.0 * m / (r * r), -4.0 * m / (r * r * r))
    }
}

impl FieldConfig for Schwarzschild {
    fn name(&self) -> String {
        format!("schwarzschild:M={}", self.mass)
    }

    fn signature(&self) -> Signature {
        Signature::lorentzian()
    }

    fn vierbein(&self, x: &[f64; 4]) -> Mat4 {
        let (r, th) = (x[1], x[2]);
        let (f, _, _) = self.f(r);
        Mat4::from_diagonal(&[f.sqrt(), 1.0 / f.sqrt(), r, r * th.sin()].into())
    }

    fn connection(&self, x: &[f64; 4]) -> [Mat4; 4] {
        let sig = self.signature();
        let (r, th) = (x[1], x[2]);
        let (f, fp, _) = self.f(r);
        let sf = f.sqrt();
        let mut a = [Mat4::zeros(); 4];
        set_antisym(&mut a[0], 0, 1, 0.5 * fp, &sig);
        set_antisym(&mut a[2], 1, 2, -sf, &sig);
        set_antisym(&mut a[3], 1, 3, -sf * th.sin(), &sig);
        set_antisym(&mut a[3], 2, 3, -th.cos(), &sig);
        a
    }

    fn vierbein_partials(&self, x: &[f64; 4]) -> Option<[Mat4; 4]> {
        let (r, th) = (x[1], x[2]);
        let (f, fp, _) = self.f(r);
        let sf = f.sqrt();
        let mut d = [Mat4::zeros(); 4];
        d[1] = Mat4::from_diagonal(&[0.5 * fp / sf, -0.5 * fp / (f * sf), 1.0, th.sin()].into());
        d[2][(3, 3)] = r * th.cos();
        Some(d)
    }

    fn connection_partials(&self, x: &[f64; 4]) -> Option<[[Mat4; 4]; 4]> {
        let sig = self.signature();
        let (r, th) = (x[1], x[2]);
        let (f, fp, fpp) = self.f(r);
        let sf = f.sqrt();
        let mut d = [[Mat4::zeros(); 4]; 4];
        set_antisym(&mut d[1][0], 0, 1, 0.5 * fpp, &sig);
        set_antisym(&mut d[1][2], 1, 2, -0.5 * fp / sf, &sig);
        set_antisym(&mut d[1][3], 1, 3, -0.5 * fp / sf * th.sin(), &sig);
        set_antisym(&mut d[2][3], 1, 3, -sf * th.cos(), &sig);
        set_antisym(&mut d[2][3], 2, 3, th.sin(), &sig);
        Some(d)
    }

    fn in_domain(&self, x: &[f64; 4]) -> bool {
        x[1] > 2.0 * self.mass && x[2].sin() > ANGLE_MARGIN
    }

    fn has_analytic_partials(&self) -> bool {
        true
    }

    /// `r` in `(3M, 10M)`, `theta` in `(0.3, pi - 0.3)`.
    fn sample(&self, u: &[f64; 4]) -> [f64; 4] {
        let m = self.mass.abs().max(1e-3);
        let pi = std::f64::consts::PI;
        [
            2.0 * u[0] - 1.0,
            m * (3.0 + 7.0 * u[1]),
            0.3 + (pi - 0.6) * u[2],
            2.0 * pi * u[3],
        ]
    }
}

/// Round 4-sphere of radius `radius` in hyperspherical angles `(chi, theta, phi, psi)`.
#[derive(Clone, Debug)]
pub struct Sphere4 {
    pub radius: f64,
}

impl Sphere4 {
    pub fn new(radius: f64) -> Self {
        Sphere4 { radius }
    }
}

fn sc(v: f64) -> (f64, f64) {
    v.sin_cos()
}

impl FieldConfig for Sphere4 {
    fn name(&self) -> String {
        format!("sphere4:r={}", self.radius)
    }

    fn signature(&self) -> Signature {
        Signature::euclidean()
    }

    fn vierbein(&self, x: &[f64; 4]) -> Mat4 {
        let r = self.radius;
        let (s1, _) = sc(x[0]);
        let (s2, _) = sc(x[1]);
        let (s3, _) = sc(x[2]);
        Mat4::from_diagonal(&[r, r * s1, r * s1 * s2, r * s1 * s2 * s3].into())
    }

    fn connection(&self, x: &[f64; 4]) -> [Mat4; 4] {
        let sig = self.signature();
        let (s2, c2) = sc(x[1]);
        let (s3, c3) = sc(x[2]);
        let c1 = x[0].cos();
        let mut a = [Mat4::zeros(); 4];
        set_antisym(&mut a[1], 1, 0, c1, &sig);
        set_antisym(&mut a[2], 2, 0, c1 * s2, &sig);
        set_antisym(&mut a[2], 2, 1, c2, &sig);
        set_antisym(&mut a[3], 3, 0, c1 * s2 * s3, &sig);
        set_antisym(&mut a[3], 3, 1, c2 * s3, &sig);
        set_antisym(&mut a[3], 3, 2, c3, &sig);
        a
    }

    fn vierbein_partials(&self, x: &[f64; 4]) -> Option<[Mat4; 4]> {
        let r = self.radius;
        let (s1, c1) = sc(x[0]);
        let (s2, c2) = sc(x[1]);
        let (s3, c3) = sc(x[2]);
        Some([
            Mat4::from_diagonal(&[0.0, r * c1, r * c1 * s2, r * c1 * s2 * s3].into()),
            Mat4::from_diagonal(&[0.0, 0.0, r * s1 * c2, r * s1 * c2 * s3].into()),
            Mat4::from_diagonal(&[0.0, 0.0, 0.0, r * s1 * s2 * c3].into()),
            Mat4::zeros(),
        ])
    }

    fn connection_partials(&self, x: &[f64; 4]) -> Option<[[Mat4; 4]; 4]> {
        let sig = self.signature();
        let (s1, c1) = sc(x[0]);
        let (s2, c2) = sc(x[1]);
        let (s3, c3) = sc(x[2]);
        let mut d = [[Mat4::zeros(); 4]; 4];
        // d_chi
        set_antisym(&mut d[0][1], 1, 0, -s1, &sig);
        set_antisym(&mut d[0][2], 2, 0, -s1 * s2, &sig);
        set_antisym(&mut d[0][3], 3, 0, -s1 * s2 * s3, &sig);
        // d_theta
        set_antisym(&mut d[1][2], 2, 0, c1 * c2, &sig);
        set_antisym(&mut d[1][2], 2, 1, -s2, &sig);
        set_antisym(&mut d[1][3], 3, 0, c1 * c2 * s3, &sig);
        set_antisym(&mut d[1][3], 3, 1, -s2 * s3, &sig);
        // d_phi
        set_antisym(&mut d[2][3], 3, 0, c1 * s2 * c3, &sig);
        set_antisym(&mut d[2][3], 3, 1, c2 * c3, &sig);
        set_antisym(&mut d[2][3], 3, 2, -s3, &sig);
        Some(d)
    }

    fn in_domain(&self, x: &[f64; 4]) -> bool {
        x[0].sin().abs() > ANGLE_MARGIN && x[1].sin().abs() > ANGLE_MARGIN && x[2].sin().abs() > ANGLE_MARGIN
    }

    fn has_analytic_partials(&self) -> bool {
        true
    }

    /// Angles kept `0.3` away from the coordinate singularities.
    fn sample(&self, u: &[f64; 4]) -> [f64; 4] {
        let pi = std::f64::consts::PI;
        [
            0.3 + (pi - 0.6) * u[0],
            0.3 + (pi - 0.6) * u[1],
            0.3 + (pi - 0.6) * u[2],
            2.0 * pi * u[3],
        ]
    }
}

/// Smooth frame and connection with quadratic coordinate dependence and random
/// coefficients of size `amplitude`. Generic: non-zero torsion and curvature.
#[derive(Clone, Debug)]
pub struct Perturbed {
    pub signature: Signature,
    pub seed: u64,
    pub amplitude: f64,
    e1: [[[f64; 4]; 4]; 4],
    e2: [[[f64; 4]; 4]; 4],
    w0: [Mat4; 4],
    w1: [[Mat4; 4]; 4],
    w2: [[Mat4; 4]; 4],
}

impl Perturbed {
    pub fn new(kind: SignatureKind, seed: u64, amplitude: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || amplitude * rng.random_range(-1.0..1.0);
        let mut cube = || -> [[[f64; 4]; 4]; 4] {
            let mut t = [[[0.0; 4]; 4]; 4];
            t.iter_mut().flatten().flatten().for_each(|v| *v = draw());
            t
        };
        let e1 = cube();
        let e2 = cube();
        let mut anti = || {
            let mut m = Mat4::zeros();
            for a in 0..4 {
                for b in (a + 1)..4 {
                    let v = draw();
                    m[(a, b)] = v;
                    m[(b, a)] = -v;
                }
            }
            m
        };
        let w0 = std::array::from_fn(|_| anti());
        let w1 = std::array::from_fn(|_| std::array::from_fn(|_| anti()));
        let w2 = std::array::from_fn(|_| std::array::from_fn(|_| anti()));
        Perturbed { signature: Signature::new(kind), seed, amplitude, e1, e2, w0, w1, w2 }
    }
}

impl FieldConfig for Perturbed {
    fn name(&self) -> String {
        format!(
            "perturbed:signature={},seed={},amp={}",
            self.signature.kind().name(),
            self.seed,
            self.amplitude
        )
    }

    fn signature(&self) -> Signature {
        self.signature.clone()
    }

    fn vierbein(&self, x: &[f64; 4]) -> Mat4 {
        Mat4::from_fn(|a, mu| {
            let id = if a == mu { 1.0 } else { 0.0 };
            id + (0..4).map(|nu| self.e1[a][mu][nu] * x[nu] + self.e2[a][mu][nu] * x[nu] * x[nu]).sum::<f64>()
        })
    }

    /// `A_mu = W_mu h` with `W_mu` antisymmetric, so that `A^{ab}` is antisymmetric.
    fn connection(&self, x: &[f64; 4]) -> [Mat4; 4] {
        let h = self.signature.h();
        std::array::from_fn(|mu| {
            let w = (0..4).fold(self.w0[mu], |acc, nu| acc + self.w1[mu][nu] * x[nu] + self.w2[mu][nu] * (x[nu] * x[nu]));
            w * h
        })
    }

    fn vierbein_partials(&self, x: &[f64; 4]) -> Option<[Mat4; 4]> {
        Some(std::array::from_fn(|nu| {
            Mat4::from_fn(|a, mu| self.e1[a][mu][nu] + 2.0 * self.e2[a][mu][nu] * x[nu])
        }))
    }

    fn connection_partials(&self, x: &[f64; 4]) -> Option<[[Mat4; 4]; 4]> {
        let h = self.signature.h();
        Some(std::array::from_fn(|nu| {
            std::array::from_fn(|mu| (self.w1[mu][nu] + self.w2[mu][nu] * (2.0 * x[nu])) * h)
        }))
    }

    fn in_domain(&self, x: &[f64; 4]) -> bool {
        x.iter().all(|v| v.is_finite() && v.abs() <= 2.0)
    }

    fn has_analytic_partials(&self) -> bool {
        true
    }
}
