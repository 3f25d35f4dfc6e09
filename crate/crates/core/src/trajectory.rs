use alloc::vec::Vec;

/// One state on a radial trajectory.
///
/// `t` is laboratory time (s) for cavity filling and proper time in
/// geometric meters for shell collapse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub r: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalEvent {
    /// Reached the requested floor radius.
    ReachedTarget,
    /// Stopped next to a turning point or singular radius.
    Bounce,
    /// The integrator gave up before reaching the end.
    StepLimit,
}

impl TerminalEvent {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminalEvent::ReachedTarget => "reached_target",
            TerminalEvent::Bounce => "bounce",
            TerminalEvent::StepLimit => "step_limit",
        }
    }
}

/// Time-ordered samples of an inward-moving radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub terminal_event: TerminalEvent,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    pub fn min_radius(&self) -> Option<f64> {
        self.samples.iter().map(|s| s.r).reduce(f64::min)
    }

    pub fn peak_speed(&self) -> f64 {
        self.samples.iter().map(|s| s.v.abs()).fold(0.0, f64::max)
    }

    /// Non-decreasing time and strictly decreasing radius.
    ///
    /// Time can stall in binary64 close to a bounce, where the remaining
    /// travel time drops below one ulp of the elapsed time.
    pub fn is_monotone(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].t >= w[0].t && w[1].r < w[0].r)
    }

    /// Strictly increasing time and strictly decreasing radius.
    pub fn is_strictly_monotone(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].t > w[0].t && w[1].r < w[0].r)
    }
}
