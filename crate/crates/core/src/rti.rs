//! Reaction torque indicator.
//!
//! Maps a reaction torque to the two visual cues of the indicator bar: a
//! filling ratio that grows linearly between `t_min` and `t_max`, and a hue
//! that is blue/green/red on the Low/Optimal/High plateaus and blends
//! linearly across a window of `2 * m_tra` around each band edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, FieldError, Result};

/// Tie tolerance applied before half-up rounding of color channels.
///
/// Channel values that are mathematically exact halves (127.5 at the band
/// edge, for instance) come out of binary arithmetic a few ulps either side
/// of the tie; anything within this distance of `.5` rounds up.
const ROUND_TIE_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u8; 3]", into = "[u8; 3]")]
pub struct ColorRgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl ColorRgb {
    pub const BLUE: ColorRgb = ColorRgb::new(0, 0, 255);
    pub const GREEN: ColorRgb = ColorRgb::new(0, 255, 0);
    pub const RED: ColorRgb = ColorRgb::new(255, 0, 0);

    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }

    fn channels(self) -> [f64; 3] {
        [self.r as f64, self.g as f64, self.b as f64]
    }
}

impl From<[u8; 3]> for ColorRgb {
    fn from([r, g, b]: [u8; 3]) -> Self {
        Self { r, g, b }
    }
}

impl From<ColorRgb> for [u8; 3] {
    fn from(c: ColorRgb) -> Self {
        [c.r, c.g, c.b]
    }
}

impl std::fmt::Display for ColorRgb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.r, self.g, self.b)
    }
}

/// Torque classification relative to the optimal band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Zone {
    Low,
    Optimal,
    High,
}

impl std::fmt::Display for Zone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Zone::Low => "Low",
            Zone::Optimal => "Optimal",
            Zone::High => "High",
        };
        f.write_str(s)
    }
}

/// Indicator parameters. All torques in Nm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RtiConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub t_low: f64,
    pub t_high: f64,
    pub t_opt: f64,
    /// Half-width of each hue blending window.
    pub m_tra: f64,
    pub c_low: ColorRgb,
    pub c_opt: ColorRgb,
    pub c_high: ColorRgb,
}

impl Default for RtiConfig {
    fn default() -> Self {
        Self {
            t_min: 0.0,
            t_max: 0.6,
            t_low: 0.20,
            t_high: 0.40,
            t_opt: 0.30,
            m_tra: 0.05,
            c_low: ColorRgb::BLUE,
            c_opt: ColorRgb::GREEN,
            c_high: ColorRgb::RED,
        }
    }
}

impl RtiConfig {
    /// Full width of a blending window.
    pub fn m_tot(&self) -> f64 {
        2.0 * self.m_tra
    }

    /// Collects every violated invariant, prefixing field names with `prefix`.
    pub fn check(&self, prefix: &str, errors: &mut Vec<FieldError>) {
        let field = |name: &str| format!("{prefix}{name}");
        let all = [
            ("t_min", self.t_min),
            ("t_max", self.t_max),
            ("t_low", self.t_low),
            ("t_high", self.t_high),
            ("t_opt", self.t_opt),
            ("m_tra", self.m_tra),
        ];
        let mut finite = true;
        for (name, v) in all {
            if !v.is_finite() {
                errors.push(FieldError::new(field(name), "must be finite"));
                finite = false;
            }
        }
        if !finite {
            return;
        }
        if self.t_max <= self.t_min {
            errors.push(FieldError::new(field("t_max"), "must exceed t_min"));
        }
        if self.m_tra <= 0.0 {
            errors.push(FieldError::new(field("m_tra"), "must be positive"));
        }
        if self.t_min >= self.t_low - self.m_tra {
            errors.push(FieldError::new(
                field("t_low"),
                "t_low - m_tra must exceed t_min",
            ));
        }
        if self.t_low + self.m_tra >= self.t_high - self.m_tra {
            errors.push(FieldError::new(
                field("t_high"),
                "blending windows around t_low and t_high overlap",
            ));
        }
        if self.t_high + self.m_tra > self.t_max {
            errors.push(FieldError::new(
                field("t_max"),
                "t_high + m_tra must not exceed t_max",
            ));
        }
        if self.t_opt < self.t_min || self.t_opt > self.t_max {
            errors.push(FieldError::new(field("t_opt"), "must lie in [t_min, t_max]"));
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        self.check("rti.", &mut errors);
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errors))
        }
    }
}

/// One rendered indicator sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RtiOutput {
    pub fill_percent: f64,
    pub color: ColorRgb,
    pub zone: Zone,
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite("torque"))
    }
}

/// Bar filling ratio in percent.
pub fn fill_ratio(tau: f64, cfg: &RtiConfig) -> Result<f64> {
    cfg.validate()?;
    check_tau(tau)?;
    Ok(fill_ratio_unchecked(tau, cfg))
}

fn fill_ratio_unchecked(tau: f64, cfg: &RtiConfig) -> f64 {
    let clamped = tau.clamp(cfg.t_min, cfg.t_max);
    (clamped - cfg.t_min) / (cfg.t_max - cfg.t_min) * 100.0
}

/// Closed optimal band: both edges count as [`Zone::Optimal`].
pub fn zone_of(tau: f64, cfg: &RtiConfig) -> Result<Zone> {
    cfg.validate()?;
    check_tau(tau)?;
    Ok(zone_unchecked(tau, cfg))
}

fn zone_unchecked(tau: f64, cfg: &RtiConfig) -> Zone {
    if tau < cfg.t_low {
        Zone::Low
    } else if tau > cfg.t_high {
        Zone::High
    } else {
        Zone::Optimal
    }
}

fn lerp(a: ColorRgb, b: ColorRgb, alpha: f64) -> [f64; 3] {
    let (a, b) = (a.channels(), b.channels());
    [0, 1, 2].map(|i| (1.0 - alpha) * a[i] + alpha * b[i])
}

/// Color channels before quantization.
pub fn color_unquantized(tau: f64, cfg: &RtiConfig) -> Result<[f64; 3]> {
    cfg.validate()?;
    check_tau(tau)?;
    Ok(color_unquantized_unchecked(tau, cfg))
}

fn color_unquantized_unchecked(tau: f64, cfg: &RtiConfig) -> [f64; 3] {
    let low_edge = cfg.t_low - cfg.m_tra;
    let high_edge = cfg.t_high - cfg.m_tra;
    if tau <= low_edge {
        cfg.c_low.channels()
    } else if tau < cfg.t_low + cfg.m_tra {
        lerp(cfg.c_low, cfg.c_opt, (tau - low_edge) / cfg.m_tot())
    } else if tau <= high_edge {
        cfg.c_opt.channels()
    } else if tau < cfg.t_high + cfg.m_tra {
        lerp(cfg.c_opt, cfg.c_high, (tau - high_edge) / cfg.m_tot())
    } else {
        cfg.c_high.channels()
    }
}

/// Half-up rounding to an 8-bit channel.
pub fn quantize_channel(x: f64) -> u8 {
    (x + 0.5 + ROUND_TIE_EPS).floor().clamp(0.0, 255.0) as u8
}

pub fn color_of(tau: f64, cfg: &RtiConfig) -> Result<ColorRgb> {
    let [r, g, b] = color_unquantized(tau, cfg)?;
    Ok(ColorRgb::new(
        quantize_channel(r),
        quantize_channel(g),
        quantize_channel(b),
    ))
}

/// Bar fill, hue and zone of the same torque sample.
pub fn render_sample(tau: f64, cfg: &RtiConfig) -> Result<RtiOutput> {
    cfg.validate()?;
    check_tau(tau)?;
    let [r, g, b] = color_unquantized_unchecked(tau, cfg);
    Ok(RtiOutput {
        fill_percent: fill_ratio_unchecked(tau, cfg),
        color: ColorRgb::new(quantize_channel(r), quantize_channel(g), quantize_channel(b)),
        zone: zone_unchecked(tau, cfg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> RtiConfig {
        RtiConfig::default()
    }

    #[test]
    fn fill_ratio_examples() {
        let c = cfg();
        assert_eq!(fill_ratio(0.0, &c).unwrap(), 0.0);
        assert_eq!(fill_ratio(0.6, &c).unwrap(), 100.0);
        assert!((fill_ratio(0.3, &c).unwrap() - 50.0).abs() < 1e-12);
        assert_eq!(fill_ratio(-0.1, &c).unwrap(), 0.0);
    }

    #[test]
    fn zone_examples() {
        let c = cfg();
        assert_eq!(zone_of(0.10, &c).unwrap(), Zone::Low);
        assert_eq!(zone_of(0.30, &c).unwrap(), Zone::Optimal);
        assert_eq!(zone_of(0.20, &c).unwrap(), Zone::Optimal);
        assert_eq!(zone_of(0.40, &c).unwrap(), Zone::Optimal);
        assert_eq!(zone_of(0.50, &c).unwrap(), Zone::High);
    }

    #[test]
    fn color_examples() {
        let c = cfg();
        assert_eq!(color_of(0.30, &c).unwrap(), ColorRgb::new(0, 255, 0));
        assert_eq!(color_of(0.10, &c).unwrap(), ColorRgb::new(0, 0, 255));
        assert_eq!(color_of(0.20, &c).unwrap(), ColorRgb::new(0, 128, 128));
        assert_eq!(color_of(0.42, &c).unwrap(), ColorRgb::new(179, 77, 0));
    }

    #[test]
    fn render_examples() {
        let c = cfg();
        let mid = render_sample(0.30, &c).unwrap();
        assert!((mid.fill_percent - 50.0).abs() < 1e-12);
        assert_eq!((mid.color, mid.zone), (ColorRgb::GREEN, Zone::Optimal));
        let lo = render_sample(0.0, &c).unwrap();
        assert_eq!((lo.fill_percent, lo.color, lo.zone), (0.0, ColorRgb::BLUE, Zone::Low));
        let hi = render_sample(0.6, &c).unwrap();
        assert_eq!((hi.fill_percent, hi.color, hi.zone), (100.0, ColorRgb::RED, Zone::High));
    }

    #[test]
    fn band_edges_blend_to_midpoint() {
        let c = cfg();
        let lo = color_unquantized(c.t_low, &c).unwrap();
        let hi = color_unquantized(c.t_high, &c).unwrap();
        for (got, want) in lo.iter().zip([0.0, 127.5, 127.5]) {
            assert!((got - want).abs() < 1e-9);
        }
        for (got, want) in hi.iter().zip([127.5, 127.5, 0.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_config_rejected() {
        let bad = RtiConfig {
            t_max: 0.0,
            ..cfg()
        };
        match fill_ratio(0.3, &bad) {
            Err(Error::Config(fields)) => assert!(fields.iter().any(|f| f.field == "rti.t_max")),
            other => panic!("expected config error, got {other:?}"),
        }
        let overlap = RtiConfig {
            m_tra: 0.11,
            ..cfg()
        };
        assert!(overlap.validate().is_err());
        assert!(RtiConfig { m_tra: 0.0, ..cfg() }.validate().is_err());
    }

    #[test]
    fn non_finite_torque_rejected() {
        assert!(matches!(render_sample(f64::NAN, &cfg()), Err(Error::NonFinite(_))));
        assert!(matches!(color_of(f64::INFINITY, &cfg()), Err(Error::NonFinite(_))));
    }

    proptest! {
        #[test]
        fn fill_is_monotone_and_clamped(a in -1.0f64..1.0, b in -1.0f64..1.0) {
            let c = cfg();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let fl = fill_ratio(lo, &c).unwrap();
            let fh = fill_ratio(hi, &c).unwrap();
            prop_assert!(fl <= fh);
            prop_assert!((0.0..=100.0).contains(&fl) && (0.0..=100.0).contains(&fh));
        }

        #[test]
        fn color_is_lipschitz(tau in -0.2f64..0.8, eps in 0.0f64..0.01) {
            let c = cfg();
            let a = color_of(tau, &c).unwrap();
            let b = color_of(tau + eps, &c).unwrap();
            let bound = 255.0 * eps / c.m_tot() + 1.0;
            for (x, y) in <[u8; 3]>::from(a).iter().zip(<[u8; 3]>::from(b).iter()) {
                prop_assert!((*x as f64 - *y as f64).abs() <= bound);
            }
        }

        #[test]
        fn pure_branches_are_exact(tau in -0.5f64..0.149) {
            let c = cfg();
            prop_assert_eq!(color_of(tau, &c).unwrap(), c.c_low);
            prop_assert_eq!(color_of(0.45 + (tau + 0.5), &c).unwrap(), c.c_high);
            let plateau = 0.25 + (tau + 0.5) / 0.649 * 0.1;
            prop_assert_eq!(color_of(plateau, &c).unwrap(), c.c_opt);
        }

        #[test]
        fn render_matches_components(tau in -0.2f64..0.8) {
            let c = cfg();
            let out = render_sample(tau, &c).unwrap();
            prop_assert_eq!(out.zone, zone_of(tau, &c).unwrap());
            prop_assert_eq!(out.color, color_of(tau, &c).unwrap());
            prop_assert_eq!(out.fill_percent, fill_ratio(tau, &c).unwrap());
        }
    }
}
