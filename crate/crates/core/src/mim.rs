//! Multiple impulse method.
//!
//! The BPSK image of the zero codeword (all −1) is perturbed by a total
//! impulse amplitude `A` split over `nb_error` random positions and decoded
//! with OSD. Any nonzero decoded codeword is a distance witness. `A` climbs
//! one unit per level until a decode escapes the zero word; the escape level
//! caps the amplitude range of later trials.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::singleton;
use crate::codebook::LinearCode;
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};
use crate::gf2::BitWord;
use crate::osd::{OsdDecoder, SoftWord, DEFAULT_ORDER};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MimConfig {
    /// Lower amplitude anchor.
    pub d0: usize,
    /// Upper amplitude anchor.
    pub d1: usize,
    pub nb_test: usize,
    /// Largest number of impulse positions per pattern.
    pub error_max: usize,
    pub osd_order: usize,
    pub rng_seed: u64,
}

impl MimConfig {
    /// `d0 = 1`; `d1` is the design distance when known, else
    /// `min(n - k + 1, n / 2)`; `error_max = min(20, d1)`; 100 trials; OSD
    /// order 3 (or k if smaller).
    pub fn defaults_for(code: &LinearCode) -> Self {
        let (n, k) = (code.n(), code.k());
        let d1 = code.design_distance().unwrap_or_else(|| (n - k + 1).min(n / 2)).clamp(1, n);
        MimConfig { d0: 1, d1, nb_test: 100, error_max: d1.min(20), osd_order: DEFAULT_ORDER.min(k), rng_seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self, code: &LinearCode) -> Result<()> {
        let n = code.n();
        let bad = |msg: alloc::string::String| Err(Error::Config(msg));
        if !(1 <= self.d0 && self.d0 <= self.d1 && self.d1 <= n) {
            return bad(format!("need 1 <= d0 <= d1 <= n, got d0={} d1={} n={n}", self.d0, self.d1));
        }
        if !(1..=n).contains(&self.error_max) {
            return bad(format!("error_max must lie in 1..={n}, got {}", self.error_max));
        }
        if self.nb_test == 0 {
            return bad("nb_test must be at least 1".into());
        }
        if self.osd_order > code.k() {
            return bad(format!("OSD order {} exceeds code dimension {}", self.osd_order, code.k()));
        }
        Ok(())
    }
}

/// Positions and positive amplitudes of one impulse pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpulsePattern {
    pub n: usize,
    pub positions: Vec<usize>,
    pub amplitudes: Vec<f64>,
}

impl ImpulsePattern {
    pub fn total(&self) -> f64 {
        self.amplitudes.iter().sum()
    }
}

/// Distinct uniform positions; amplitudes are `A` times a flat random
/// partition of 1 (spacings of sorted uniforms), each strictly positive.
pub fn make_pattern<R: Rng + ?Sized>(n: usize, nb_error: usize, a: f64, rng: &mut R) -> Result<ImpulsePattern> {
    if nb_error == 0 || nb_error > n {
        return Err(Error::Domain(format!("nb_error must lie in 1..={n}, got {nb_error}")));
    }
    if a.is_nan() || a <= 0.0 {
        return Err(Error::Domain(format!("amplitude must be positive, got {a}")));
    }
    let positions = index::sample(rng, n, nb_error).into_vec();
    let mut cuts = vec![0.0; nb_error + 1];
    let amplitudes = loop {
        cuts[nb_error] = 1.0;
        for c in &mut cuts[1..nb_error] {
            *c = rng.random::<f64>();
        }
        cuts[1..nb_error].sort_by(f64::total_cmp);
        let amps: Vec<f64> = cuts.windows(2).map(|w| a * (w[1] - w[0])).collect();
        if amps.iter().all(|&x| x > 0.0) {
            break amps;
        }
    };
    Ok(ImpulsePattern { n, positions, amplitudes })
}

/// `-1` everywhere, plus the amplitude at each impulse position.
pub fn apply_pattern(pattern: &ImpulsePattern) -> SoftWord {
    let mut y = vec![-1.0; pattern.n];
    for (&p, &a) in pattern.positions.iter().zip(&pattern.amplitudes) {
        y[p] += a;
    }
    SoftWord::new(y)
}

/// A new lightest codeword, reported as it is found.
#[derive(Debug, Clone, PartialEq)]
pub struct MimEvent {
    pub trial: usize,
    pub amplitude: f64,
    pub nb_error: usize,
    pub weight: usize,
    /// Decodes performed by the reporting state so far.
    pub decodes: u64,
    pub codeword: BitWord,
}

/// Search state carried across trials.
#[derive(Debug, Clone, PartialEq)]
pub struct MimState {
    pub a_min: f64,
    pub d_t: usize,
    pub witness: Option<BitWord>,
    pub decodes: u64,
    pub trials_done: usize,
}

impl MimState {
    /// Folds another state in: minimum amplitude cap, lightest witness.
    pub fn merge(&mut self, other: &MimState) {
        self.a_min = self.a_min.min(other.a_min);
        self.decodes += other.decodes;
        self.trials_done += other.trials_done;
        if let Some(w) = &other.witness {
            let better = match &self.witness {
                None => true,
                Some(mine) => other.d_t < self.d_t || (other.d_t == self.d_t && w.lex_cmp(mine).is_lt()),
            };
            if better {
                self.d_t = other.d_t;
                self.witness = Some(w.clone());
            }
        }
    }

    fn offer(&mut self, cw: BitWord) -> bool {
        let w = cw.weight();
        if w == 0 {
            return false;
        }
        if w < self.d_t || (self.witness.is_none() && w <= self.d_t) {
            self.d_t = w;
            self.witness = Some(cw);
            return true;
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MimRun {
    pub estimate: Estimate,
    pub state: MimState,
    pub events: Vec<MimEvent>,
}

/// Configured search over one code.
pub struct Mim<'a> {
    code: &'a LinearCode,
    cfg: MimConfig,
    decoder: OsdDecoder<'a>,
}

impl<'a> Mim<'a> {
    pub fn new(code: &'a LinearCode, cfg: MimConfig) -> Result<Self> {
        cfg.validate(code)?;
        let decoder = OsdDecoder::new(code, cfg.osd_order)?;
        Ok(Mim { code, cfg, decoder })
    }

    pub fn config(&self) -> &MimConfig {
        &self.cfg
    }

    /// `A_min = d1 + 0.5`, `d_t` at the Singleton bound, no witness.
    pub fn initial_state(&self) -> MimState {
        MimState {
            a_min: self.cfg.d1 as f64 + 0.5,
            d_t: singleton(self.code.n(), self.code.k()),
            witness: None,
            decodes: 0,
            trials_done: 0,
        }
    }

    /// Random stream of one trial, independent of scheduling.
    pub fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.rng_seed);
        rng.set_stream(trial as u64);
        rng
    }

    /// One outer trial. Levels climb from `d0 + 0.5` while every decode so
    /// far returned zero; each level tries `error_max` down to 1 impulses.
    pub fn run_trial(&self, trial: usize, state: &mut MimState, observer: &mut dyn FnMut(&MimEvent)) -> Result<()> {
        let n = self.code.n();
        let mut rng = self.trial_rng(trial);
        let mut a = self.cfg.d0 as f64 - 0.5;
        let mut escaped = false;
        while !escaped && a <= state.a_min - 1.0 {
            a += 1.0;
            debug_assert!(a <= state.a_min);
            for nb_error in (1..=self.cfg.error_max).rev() {
                let pattern = make_pattern(n, nb_error, a, &mut rng)?;
                let decoded = self.decoder.decode(&apply_pattern(&pattern))?;
                state.decodes += 1;
                if decoded.is_zero() {
                    continue;
                }
                escaped = true;
                let weight = decoded.weight();
                if state.offer(decoded.clone()) {
                    let decodes = state.decodes;
                    observer(&MimEvent { trial, amplitude: a, nb_error, weight, decodes, codeword: decoded });
                }
            }
        }
        state.a_min = state.a_min.min(a);
        state.trials_done += 1;
        Ok(())
    }

    pub fn estimate(&self, state: &MimState) -> Estimate {
        Estimate { method: Method::Mim, d: state.d_t, witness: state.witness.clone() }
    }

    /// All trials in order on one thread.
    pub fn run_with(&self, observer: &mut dyn FnMut(&MimEvent)) -> Result<MimRun> {
        let mut state = self.initial_state();
        let mut events = Vec::new();
        for trial in 0..self.cfg.nb_test {
            self.run_trial(trial, &mut state, &mut |e| {
                events.push(e.clone());
                observer(e);
            })?;
        }
        Ok(MimRun { estimate: self.estimate(&state), state, events })
    }
}

pub fn run(code: &LinearCode, cfg: &MimConfig) -> Result<MimRun> {
    Mim::new(code, cfg.clone())?.run_with(&mut |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{build_bch, build_dcc, build_qdc, build_qr};
    use crate::gf2::BitMatrix;
    use crate::oracle::exact_min_distance;
    use proptest::prelude::*;

    fn rep7() -> LinearCode {
        LinearCode::generic(BitMatrix::from_rows(vec![BitWord::ones(7)]).unwrap()).unwrap()
    }

    #[test]
    fn pattern_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = make_pattern(10, 1, 2.5, &mut rng).unwrap();
        assert_eq!(p.amplitudes, vec![2.5]);
        let p = make_pattern(3, 3, 3.0, &mut rng).unwrap();
        let mut pos = p.positions.clone();
        pos.sort();
        assert_eq!(pos, vec![0, 1, 2]);
        assert!((p.total() - 3.0).abs() < 1e-9);
        assert!(make_pattern(3, 4, 1.0, &mut rng).is_err());
        assert!(make_pattern(3, 0, 1.0, &mut rng).is_err());
        assert!(make_pattern(3, 1, 0.0, &mut rng).is_err());
    }

    #[test]
    fn flat_partition_means() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (draws, a) = (10_000, 6.0);
        let mut sums = [0.0; 4];
        for _ in 0..draws {
            let p = make_pattern(20, 4, a, &mut rng).unwrap();
            assert!(p.amplitudes.iter().all(|&x| x > 0.0));
            assert!((p.total() - a).abs() < 1e-9);
            for (s, x) in sums.iter_mut().zip(&p.amplitudes) {
                *s += x;
            }
        }
        // each spacing of 3 sorted uniforms is Beta(1, 3): variance 3/80
        let sd = a * (3.0f64 / 80.0 / draws as f64).sqrt();
        for s in sums {
            assert!((s / draws as f64 - a / 4.0).abs() < 3.0 * sd, "{s}");
        }
    }

    #[test]
    fn apply_pattern_examples() {
        let p = ImpulsePattern { n: 4, positions: vec![2], amplitudes: vec![2.0] };
        assert_eq!(apply_pattern(&p).values(), &[-1.0, -1.0, 1.0, -1.0]);
        let p = ImpulsePattern { n: 3, positions: vec![], amplitudes: vec![] };
        assert_eq!(apply_pattern(&p).values(), &[-1.0; 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = make_pattern(15, 5, 7.0, &mut rng).unwrap();
            let hard = apply_pattern(&p).hard_decision();
            let expect: Vec<usize> = {
                let mut v: Vec<usize> =
                    p.positions.iter().zip(&p.amplitudes).filter(|(_, &a)| a > 1.0).map(|(&i, _)| i).collect();
                v.sort();
                v
            };
            assert_eq!(hard.ones_iter().collect::<Vec<_>>(), expect);
        }
    }

    #[test]
    fn defaults_and_validation() {
        let bch = build_bch(6, 7).unwrap();
        let cfg = MimConfig::defaults_for(&bch);
        assert_eq!((cfg.d0, cfg.d1, cfg.error_max, cfg.nb_test, cfg.osd_order), (1, 15, 15, 100, 3));
        let qr = build_qr(47).unwrap();
        assert_eq!(MimConfig::defaults_for(&qr).d1, 23);
        assert_eq!(MimConfig::defaults_for(&rep7()).osd_order, 1);
        assert!(MimConfig { d0: 5, d1: 4, ..cfg.clone() }.validate(&bch).is_err());
        assert!(MimConfig { error_max: 64, ..cfg.clone() }.validate(&bch).is_err());
        assert!(MimConfig { nb_test: 0, ..cfg.clone() }.validate(&bch).is_err());
        assert!(MimConfig { osd_order: 25, ..cfg }.validate(&bch).is_err());
    }

    #[test]
    fn repetition_returns_all_ones() {
        let code = rep7();
        let cfg = MimConfig { d1: 7, error_max: 7, nb_test: 5, ..MimConfig::defaults_for(&code) };
        let r = run(&code, &cfg).unwrap();
        assert_eq!(r.estimate.d, 7);
        assert_eq!(r.estimate.witness, Some(BitWord::ones(7)));
    }

    #[test]
    fn no_escape_reports_no_witness() {
        // amplitude never exceeds 3.5, so the weight-7 word always loses
        let code = rep7();
        let r = run(&code, &MimConfig::defaults_for(&code)).unwrap();
        assert_eq!(r.estimate.witness, None);
        assert_eq!(r.estimate.d, 7);
        assert!(r.events.is_empty());
    }

    #[test]
    fn small_codes_exact() {
        for (code, d) in [(build_qr(23).unwrap(), 7), (build_qdc(11).unwrap(), 8), (build_bch(5, 2).unwrap(), 5)] {
            let cfg = MimConfig { nb_test: 30, ..MimConfig::defaults_for(&code) }.with_seed(4);
            let e = run(&code, &cfg).unwrap().estimate;
            assert_eq!(e.d, d, "{}", code.label());
            assert!(e.is_certified_by(&code));
        }
    }

    #[test]
    fn deterministic_events_monotone_and_a_min_shrinks() {
        let code = build_qr(31).unwrap_or_else(|_| build_bch(5, 3).unwrap());
        let cfg = MimConfig { nb_test: 20, ..MimConfig::defaults_for(&code) }.with_seed(11);
        let a = run(&code, &cfg).unwrap();
        assert_eq!(a, run(&code, &cfg).unwrap());
        assert!(a.events.windows(2).all(|w| w[1].weight < w[0].weight));

        let mim = Mim::new(&code, cfg).unwrap();
        let mut st = mim.initial_state();
        let mut prev = st.a_min;
        for t in 0..20 {
            mim.run_trial(t, &mut st, &mut |_| {}).unwrap();
            assert!(st.a_min <= prev);
            prev = st.a_min;
        }
    }

    #[test]
    fn merge_keeps_lightest() {
        let code = build_qdc(11).unwrap();
        let mim = Mim::new(&code, MimConfig { nb_test: 4, ..MimConfig::defaults_for(&code) }).unwrap();
        let mut whole = mim.initial_state();
        let mut parts = mim.initial_state();
        for t in 0..4 {
            let mut s = mim.initial_state();
            s.decodes = 0;
            mim.run_trial(t, &mut s, &mut |_| {}).unwrap();
            parts.merge(&s);
            mim.run_trial(t, &mut whole, &mut |_| {}).unwrap();
        }
        assert_eq!(parts.trials_done, 4);
        assert!(parts.witness.is_some());
        assert!(parts.d_t >= 8 && whole.d_t >= 8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn witness_bounds_true_distance(header in 1u16.., seed in any::<u64>()) {
            let code = build_dcc(&BitWord::from_u64(14, header as u64 & 0x3fff | 1)).unwrap();
            let d = exact_min_distance(&code, None).unwrap().d_exact;
            let cfg = MimConfig { nb_test: 5, ..MimConfig::defaults_for(&code) }.with_seed(seed);
            let e = run(&code, &cfg).unwrap().estimate;
            if e.witness.is_some() {
                prop_assert!(e.is_certified_by(&code));
                prop_assert!(d <= e.d);
            }
        }
    }
}
