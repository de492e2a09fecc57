//! Geometric mmWave channels on a uniform linear array and their beamspace
//! representation.
//!
//! A user channel is the sum of `L` plane waves,
//! `h = sqrt(N_r / L) * sum_l w_l a(theta_l)`, with IID `CN(0, 1)` path gains.
//! The receiver combines with the unitary DFT codebook `A`, so the
//! beamspace channel is `H_b = A^H H`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

// Shadowed by inherent float methods whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::{self, CMatrix};
use crate::{Error, Result, C64};

/// Scenario scalars shared by the channel generator, the rate formulas and
/// the schedulers.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// `N_r`. Also the number of RF chains and ADC pairs.
    pub num_antennas: usize,
    /// `N_u`, users in the cell.
    pub num_users: usize,
    /// `N_s`, users to schedule.
    pub num_scheduled: usize,
    /// `L`, propagation paths per user.
    pub num_paths: usize,
    /// `N_b`, dominant beams stored per user.
    pub num_stored_beams: usize,
    /// Linear transmit power `rho` (noise variance is one).
    pub transmit_power: f64,
    /// Semi-orthogonality threshold `epsilon`.
    pub ortho_threshold: f64,
    /// Beam-overlap limit `N_OL`.
    pub beam_overlap_limit: usize,
    /// Antenna spacing in wavelengths, `d / lambda`.
    pub antenna_spacing: f64,
}

impl SystemConfig {
    /// `N_r = 128`, `N_u = 200`, `N_s = 10`, `L = 4`, `N_b = 8`, `N_OL = 3`.
    pub fn full_scale() -> Self {
        Self {
            num_antennas: 128,
            num_users: 200,
            num_scheduled: 10,
            num_paths: 4,
            num_stored_beams: 8,
            transmit_power: 1.0,
            ortho_threshold: 0.5,
            beam_overlap_limit: 3,
            antenna_spacing: 0.5,
        }
    }

    /// Reduced scenario for quick runs: `N_r = 64`, `N_u = 100`, `N_s = 8`.
    pub fn desk_scale() -> Self {
        Self {
            num_antennas: 64,
            num_users: 100,
            num_scheduled: 8,
            ..Self::full_scale()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_antennas == 0
            || self.num_users == 0
            || self.num_scheduled == 0
            || self.num_paths == 0
        {
            return Err(Error::InvalidConfig("antenna, user, schedule and path counts must be positive"));
        }
        if self.num_scheduled > self.num_users {
            return Err(Error::InvalidConfig("cannot schedule more users than exist"));
        }
        if self.num_scheduled > self.num_antennas {
            return Err(Error::InvalidConfig("cannot schedule more users than antennas"));
        }
        if self.num_stored_beams < self.num_paths {
            return Err(Error::InvalidConfig("stored beams must be at least the number of paths"));
        }
        if self.num_stored_beams > self.num_antennas {
            return Err(Error::InvalidConfig("stored beams exceed the number of antennas"));
        }
        if !(0.0..=1.0).contains(&self.ortho_threshold) {
            return Err(Error::InvalidConfig("orthogonality threshold must lie in [0, 1]"));
        }
        if !self.transmit_power.is_finite() || self.transmit_power < 0.0 {
            return Err(Error::InvalidConfig("transmit power must be finite and non-negative"));
        }
        if self.antenna_spacing.is_nan() || self.antenna_spacing <= 0.0 {
            return Err(Error::InvalidConfig("antenna spacing must be positive"));
        }
        Ok(())
    }
}

/// Draws one `CN(0, 1)` sample: variance 1/2 per real component.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// Steering vector for a normalized spatial angle `d / lambda * sin(theta)`.
pub fn spatial_steering_vector(spatial_angle: f64, num_antennas: usize) -> Vec<C64> {
    let scale = 1.0 / (num_antennas as f64).sqrt();
    (0..num_antennas)
        .map(|m| {
            // Reduce the phase modulo one turn before scaling by 2 pi.
            let turns = (m as f64 * spatial_angle).fract();
            C64::from_polar(scale, -2.0 * PI * turns)
        })
        .collect()
}

/// ULA steering vector `a(theta)`, entry `m` equal to
/// `exp(-j 2 pi m (d / lambda) sin(theta)) / sqrt(N_r)`.
pub fn steering_vector(theta: f64, num_antennas: usize, antenna_spacing: f64) -> Result<Vec<C64>> {
    if !(-FRAC_PI_2..=FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain("angle of arrival must lie in [-pi/2, pi/2]"));
    }
    if num_antennas == 0 {
        return Err(Error::Domain("array needs at least one antenna"));
    }
    Ok(spatial_steering_vector(antenna_spacing * theta.sin(), num_antennas))
}

/// Unitary DFT combiner: `N_r` steering vectors at spatial angles `i / N_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringMatrix(CMatrix);

impl SteeringMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn num_antennas(&self) -> usize {
        self.0.rows()
    }

    /// Largest entry of `|A^H A - I|`.
    pub fn unitarity_error(&self) -> f64 {
        self.0.gram().max_abs_diff(&CMatrix::identity(self.num_antennas()))
    }
}

pub fn dft_codebook(num_antennas: usize) -> SteeringMatrix {
    let n = num_antennas;
    let scale = 1.0 / (n as f64).sqrt();
    // Integer phase index keeps the entries exact up to one rounding.
    SteeringMatrix(CMatrix::from_fn(n, n, |m, i| {
        let k = (m * i) % n;
        C64::from_polar(scale, -2.0 * PI * k as f64 / n as f64)
    }))
}

/// Angle of arrival whose steering vector coincides with codebook column
/// `index`. Spatial angles at or above 1/2 are wrapped to the equivalent
/// negative angle.
pub fn grid_angle(index: usize, num_antennas: usize, antenna_spacing: f64) -> Result<f64> {
    if index >= num_antennas {
        return Err(Error::Domain("grid index out of range"));
    }
    let mut spatial = index as f64 / num_antennas as f64;
    if spatial >= 0.5 {
        spatial -= 1.0;
    }
    let s = spatial / antenna_spacing;
    if s.abs() > 1.0 {
        return Err(Error::Domain("grid point not reachable with this antenna spacing"));
    }
    Ok(s.asin())
}

/// One user's multipath channel.
#[derive(Debug, Clone, PartialEq)]
pub struct UserChannel {
    pub path_gains: Vec<C64>,
    pub path_angles: Vec<f64>,
    pub antenna_vector: Vec<C64>,
}

impl UserChannel {
    /// Superposes the given paths: `sqrt(N_r / L) * sum_l w_l a(theta_l)`.
    pub fn from_paths(
        path_gains: Vec<C64>,
        path_angles: Vec<f64>,
        num_antennas: usize,
        antenna_spacing: f64,
    ) -> Result<Self> {
        if path_gains.len() != path_angles.len() {
            return Err(Error::DimensionMismatch {
                expected: (path_gains.len(), 1),
                found: (path_angles.len(), 1),
            });
        }
        if path_gains.is_empty() {
            return Err(Error::Domain("a channel needs at least one path"));
        }
        let scale = (num_antennas as f64 / path_gains.len() as f64).sqrt();
        let mut h = vec![C64::new(0.0, 0.0); num_antennas];
        for (&g, &theta) in path_gains.iter().zip(&path_angles) {
            let a = steering_vector(theta, num_antennas, antenna_spacing)?;
            for (hm, am) in h.iter_mut().zip(a) {
                *hm += g * am * scale;
            }
        }
        Ok(Self {
            path_gains,
            path_angles,
            antenna_vector: h,
        })
    }
}

/// Random user channel with `L` off-grid paths, angles uniform on
/// `[-pi/2, pi/2]`.
pub fn draw_user_channel<R: Rng + ?Sized>(
    rng: &mut R,
    num_antennas: usize,
    num_paths: usize,
    antenna_spacing: f64,
) -> Result<UserChannel> {
    let gains = (0..num_paths).map(|_| complex_gaussian(rng)).collect();
    let angles = (0..num_paths)
        .map(|_| rng.random_range(-FRAC_PI_2..=FRAC_PI_2))
        .collect();
    UserChannel::from_paths(gains, angles, num_antennas, antenna_spacing)
}

/// Random user channel whose `L` paths sit on distinct codebook grid
/// points, so the beamspace vector has exactly `L` nonzero entries.
pub fn draw_on_grid_user_channel<R: Rng + ?Sized>(
    rng: &mut R,
    num_antennas: usize,
    num_paths: usize,
    antenna_spacing: f64,
) -> Result<UserChannel> {
    if num_paths > num_antennas {
        return Err(Error::Domain("more on-grid paths than grid points"));
    }
    let gains = (0..num_paths).map(|_| complex_gaussian(rng)).collect();
    let angles = rand::seq::index::sample(rng, num_antennas, num_paths)
        .into_iter()
        .map(|i| grid_angle(i, num_antennas, antenna_spacing))
        .collect::<Result<Vec<_>>>()?;
    UserChannel::from_paths(gains, angles, num_antennas, antenna_spacing)
}

/// Antenna-domain channel matrix `H`, one column per user.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix(pub CMatrix);

impl ChannelMatrix {
    pub fn from_users(users: &[UserChannel]) -> Result<Self> {
        let cols: Vec<&[C64]> = users.iter().map(|u| u.antenna_vector.as_slice()).collect();
        CMatrix::from_columns(&cols).map(Self)
    }
}

/// Draws `N_u` independent off-grid user channels.
pub fn draw_channel_matrix<R: Rng + ?Sized>(rng: &mut R, cfg: &SystemConfig) -> Result<ChannelMatrix> {
    let users = (0..cfg.num_users)
        .map(|_| draw_user_channel(rng, cfg.num_antennas, cfg.num_paths, cfg.antenna_spacing))
        .collect::<Result<Vec<_>>>()?;
    ChannelMatrix::from_users(&users)
}

/// Beamspace channel matrix `H_b = A^H H`, one column per user.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamspaceMatrix(CMatrix);

impl BeamspaceMatrix {
    pub fn new(matrix: CMatrix) -> Self {
        Self(matrix)
    }

    pub fn from_columns<V: AsRef<[C64]>>(columns: &[V]) -> Result<Self> {
        CMatrix::from_columns(columns).map(Self)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }

    pub fn num_beams(&self) -> usize {
        self.0.rows()
    }

    pub fn num_users(&self) -> usize {
        self.0.cols()
    }

    pub fn column(&self, k: usize) -> &[C64] {
        self.0.col(k)
    }

    /// Beamspace matrix of the listed users, in order.
    pub fn select(&self, users: &[usize]) -> Self {
        Self(self.0.select_columns(users))
    }
}

pub fn to_beamspace(h: &ChannelMatrix, a: &SteeringMatrix) -> Result<BeamspaceMatrix> {
    let n = a.num_antennas();
    if a.matrix().cols() != n || h.0.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, h.0.cols()),
            found: h.0.shape(),
        });
    }
    a.matrix().adjoint_mul(&h.0).map(BeamspaceMatrix)
}

/// How the power of a virtual channel is split across its support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spread {
    /// `gamma / L` on every supported beam.
    Equal,
    /// All power on one beam; the support must have exactly one index.
    SingleBeam,
    /// Powers drawn from a flat Dirichlet on the simplex.
    RandomDirichlet,
}

/// On-grid beamspace channel with an explicit support.
#[derive(Debug, Clone, PartialEq)]
pub struct VirtualChannelSpec {
    /// Zero-based beam indices; `L` is its length.
    pub support: Vec<usize>,
    /// Squared norm `gamma`.
    pub norm_sq: f64,
    pub spread: Spread,
}

/// Builds the beamspace vector described by `spec`. Phases are uniform
/// random; magnitudes follow the spread rule.
pub fn make_virtual_channel<R: Rng + ?Sized>(
    spec: &VirtualChannelSpec,
    num_beams: usize,
    rng: &mut R,
) -> Result<Vec<C64>> {
    let l = spec.support.len();
    if l == 0 {
        return Err(Error::Domain("virtual channel support is empty"));
    }
    if spec.spread == Spread::SingleBeam && l != 1 {
        return Err(Error::Domain("single-beam spread needs a support of size one"));
    }
    if spec.norm_sq.is_nan() || spec.norm_sq <= 0.0 {
        return Err(Error::Domain("virtual channel norm must be positive"));
    }
    let mut seen = vec![false; num_beams];
    for &i in &spec.support {
        if i >= num_beams {
            return Err(Error::Domain("support index outside the beamspace"));
        }
        if core::mem::replace(&mut seen[i], true) {
            return Err(Error::Domain("support indices must be distinct"));
        }
    }
    let powers: Vec<f64> = match spec.spread {
        Spread::Equal | Spread::SingleBeam => vec![spec.norm_sq / l as f64; l],
        Spread::RandomDirichlet => {
            let raw: Vec<f64> = (0..l)
                .map(|_| {
                    let e: f64 = Exp1.sample(rng);
                    e.max(f64::MIN_POSITIVE)
                })
                .collect();
            let total: f64 = raw.iter().sum();
            raw.iter().map(|x| spec.norm_sq * x / total).collect()
        }
    };
    let mut h = vec![C64::new(0.0, 0.0); num_beams];
    for (&i, p) in spec.support.iter().zip(powers) {
        let phase = rng.random_range(0.0..2.0 * PI);
        h[i] = C64::from_polar(p.sqrt(), phase);
    }
    Ok(h)
}

/// Indices of the `N_b` strongest beams, ascending. Equal magnitudes are
/// resolved in favour of the lower index. `N_b` is clamped to the vector
/// length.
pub fn dominant_beams(h_b: &[C64], num_stored: usize) -> Vec<usize> {
    let mag: Vec<f64> = h_b.iter().map(|x| x.norm_sqr()).collect();
    let mut order: Vec<usize> = (0..h_b.len()).collect();
    order.sort_by(|&a, &b| mag[b].total_cmp(&mag[a]).then(a.cmp(&b)));
    order.truncate(num_stored.min(h_b.len()));
    order.sort_unstable();
    order
}

/// Size of the intersection of two ascending index sets.
pub fn overlap_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Euclidean norm preserved by the beamspace transform.
pub fn column_norm(h: &[C64]) -> f64 {
    linalg::norm(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn broadside_steering_is_flat() {
        let a = steering_vector(0.0, 4, 0.5).unwrap();
        for x in a {
            assert!((x - C64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn steering_norm_is_one() {
        for &theta in &[-1.2, -0.3, 0.0, 0.7, FRAC_PI_2] {
            let a = steering_vector(theta, 128, 0.5).unwrap();
            assert!((linalg::norm(&a) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn steering_rejects_out_of_range_angle() {
        assert!(matches!(steering_vector(1.6, 8, 0.5), Err(Error::Domain(_))));
        assert!(matches!(steering_vector(-1.6, 8, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn steering_depends_only_on_sine() {
        let theta = 0.4f64;
        let direct = steering_vector(theta, 32, 0.5).unwrap();
        let via_sine = spatial_steering_vector(0.5 * theta.sin(), 32);
        for (a, b) in direct.iter().zip(&via_sine) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn grid_angles_reproduce_codebook_columns() {
        let n = 16;
        let a = dft_codebook(n);
        for i in 0..=n / 2 {
            let theta = (2.0 * i as f64 / n as f64).asin();
            let v = steering_vector(theta, n, 0.5).unwrap();
            let col = a.matrix().col(i);
            for (x, y) in v.iter().zip(col) {
                assert!((x - y).norm() < 1e-12, "column {i}");
            }
        }
        for i in 0..n {
            let v = steering_vector(grid_angle(i, n, 0.5).unwrap(), n, 0.5).unwrap();
            let col = a.matrix().col(i);
            for (x, y) in v.iter().zip(col) {
                assert!((x - y).norm() < 1e-12, "wrapped column {i}");
            }
        }
    }

    #[test]
    fn codebook_trivial_and_unitary() {
        let a1 = dft_codebook(1);
        assert_eq!(a1.matrix()[(0, 0)], C64::new(1.0, 0.0));
        assert!(dft_codebook(4).unitarity_error() < 1e-12);
        let a8 = dft_codebook(8);
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert!(linalg::dot(a8.matrix().col(i), a8.matrix().col(j)).norm() < 1e-12);
                }
            }
        }
        assert!(dft_codebook(128).unitarity_error() < 1e-10);
    }

    #[test]
    fn single_unit_path_at_broadside() {
        let u = UserChannel::from_paths(vec![C64::new(1.0, 0.0)], vec![0.0], 8, 0.5).unwrap();
        for x in &u.antenna_vector {
            assert!((x - C64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn on_grid_paths_are_sparse_in_beamspace() {
        let mut rng = rng();
        let (n, l) = (32, 4);
        let u = draw_on_grid_user_channel(&mut rng, n, l, 0.5).unwrap();
        let h = ChannelMatrix::from_users(core::slice::from_ref(&u)).unwrap();
        let hb = to_beamspace(&h, &dft_codebook(n)).unwrap();
        let big: Vec<usize> = (0..n).filter(|&i| hb.column(0)[i].norm() > 1e-9).collect();
        assert_eq!(big.len(), l);
        let scale = (n as f64 / l as f64).sqrt();
        for (g, theta) in u.path_gains.iter().zip(&u.path_angles) {
            let spatial = 0.5 * theta.sin();
            let idx = ((spatial.rem_euclid(1.0) * n as f64).round() as usize) % n;
            assert!((hb.column(0)[idx] - g * scale).norm() < 1e-10);
        }
    }

    #[test]
    fn codebook_maps_to_identity() {
        let a = dft_codebook(8);
        let hb = to_beamspace(&ChannelMatrix(a.matrix().clone()), &a).unwrap();
        assert!(hb.matrix().max_abs_diff(&CMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn beamspace_preserves_column_norms() {
        let mut rng = rng();
        let cfg = SystemConfig {
            num_users: 5,
            num_scheduled: 2,
            ..SystemConfig::desk_scale()
        };
        let h = draw_channel_matrix(&mut rng, &cfg).unwrap();
        let hb = to_beamspace(&h, &dft_codebook(cfg.num_antennas)).unwrap();
        for k in 0..cfg.num_users {
            assert!((column_norm(h.0.col(k)) - column_norm(hb.column(k))).abs() < 1e-10);
        }
    }

    #[test]
    fn beamspace_dimension_mismatch() {
        let h = ChannelMatrix(CMatrix::zeros(4, 2));
        assert!(to_beamspace(&h, &dft_codebook(8)).is_err());
    }

    #[test]
    fn mean_channel_power_matches_antenna_count() {
        let mut rng = rng();
        let trials = 10_000;
        let mean = (0..trials)
            .map(|_| linalg::norm_sq(&draw_user_channel(&mut rng, 64, 4, 0.5).unwrap().antenna_vector))
            .sum::<f64>()
            / trials as f64;
        assert!((mean / 64.0 - 1.0).abs() < 0.03, "mean power {mean}");
    }

    #[test]
    fn virtual_channel_spreads() {
        let mut rng = rng();
        let eq = VirtualChannelSpec {
            support: vec![0, 3, 5, 9],
            norm_sq: 4.0,
            spread: Spread::Equal,
        };
        let h = make_virtual_channel(&eq, 16, &mut rng).unwrap();
        assert_eq!(h.iter().filter(|x| x.norm() > 0.0).count(), 4);
        for &i in &eq.support {
            assert!((h[i].norm_sqr() - 1.0).abs() < 1e-12);
        }

        let single = VirtualChannelSpec {
            support: vec![2],
            norm_sq: 4.0,
            spread: Spread::SingleBeam,
        };
        let h = make_virtual_channel(&single, 16, &mut rng).unwrap();
        assert!((h[2].norm_sqr() - 4.0).abs() < 1e-12);
        let bad = VirtualChannelSpec {
            support: vec![2, 3],
            ..single
        };
        assert!(make_virtual_channel(&bad, 16, &mut rng).is_err());

        let dir = VirtualChannelSpec {
            support: vec![1, 4, 7, 8, 11],
            norm_sq: 1.0,
            spread: Spread::RandomDirichlet,
        };
        let h = make_virtual_channel(&dir, 16, &mut rng).unwrap();
        assert!((linalg::norm_sq(&h) - 1.0).abs() < 1e-12);
        assert_eq!(h.iter().filter(|x| x.norm() > 0.0).count(), 5);
    }

    #[test]
    fn virtual_channel_rejects_bad_support() {
        let mut rng = rng();
        let dup = VirtualChannelSpec {
            support: vec![1, 1],
            norm_sq: 1.0,
            spread: Spread::Equal,
        };
        assert!(make_virtual_channel(&dup, 8, &mut rng).is_err());
        let out = VirtualChannelSpec {
            support: vec![8],
            norm_sq: 1.0,
            spread: Spread::Equal,
        };
        assert!(make_virtual_channel(&out, 8, &mut rng).is_err());
    }

    #[test]
    fn dominant_beam_basics() {
        let mut e3 = vec![C64::new(0.0, 0.0); 6];
        e3[2] = C64::new(1.0, 0.0);
        assert_eq!(dominant_beams(&e3, 1), vec![2]);

        let mut tie = vec![C64::new(0.0, 0.0); 6];
        tie[0] = C64::new(0.0, 1.0);
        tie[4] = C64::new(1.0, 0.0);
        assert_eq!(dominant_beams(&tie, 1), vec![0]);
    }

    #[test]
    fn dominant_beams_match_full_sort() {
        let mut rng = rng();
        for _ in 0..50 {
            let h: Vec<C64> = (0..40).map(|_| complex_gaussian(&mut rng)).collect();
            let got = dominant_beams(&h, 8);
            let mut sorted: Vec<(f64, usize)> = h.iter().map(|x| x.norm()).zip(0..).collect();
            sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let mut want: Vec<usize> = sorted[..8].iter().map(|p| p.1).collect();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn overlap_of_sorted_sets() {
        assert_eq!(overlap_count(&[1, 3, 5, 7], &[2, 3, 7, 9]), 2);
        assert_eq!(overlap_count(&[], &[1]), 0);
    }

    #[test]
    fn config_validation() {
        assert!(SystemConfig::full_scale().validate().is_ok());
        let bad = SystemConfig {
            num_scheduled: 300,
            ..SystemConfig::full_scale()
        };
        assert!(bad.validate().is_err());
        let bad = SystemConfig {
            num_stored_beams: 2,
            ..SystemConfig::full_scale()
        };
        assert!(bad.validate().is_err());
    }
}
