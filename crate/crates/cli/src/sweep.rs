use std::fmt;
use std::str::FromStr;

use qiranging::curve::{linspace, logspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// `start:stop:points[:lin|log]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Option<Scale>,
}

impl SweepSpec {
    pub fn values(&self, default_scale: Scale) -> Result<Vec<f64>, String> {
        let scale = self.scale.unwrap_or(default_scale);
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        if self.start.partial_cmp(&self.stop) != Some(std::cmp::Ordering::Less) {
            return Err(format!(
                "sweep start {} must be below stop {}",
                self.start, self.stop
            ));
        }
        Ok(match scale {
            Scale::Linear => linspace(self.start, self.stop, self.points),
            Scale::Log => {
                if self.start <= 0.0 {
                    return Err("log sweep needs positive endpoints".into());
                }
                logspace(self.start, self.stop, self.points)
            }
        })
    }
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("expected start:stop:points[:lin|log], got `{s}`"));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{p}` is not a number"))
        };
        let start = num(parts[0])?;
        let stop = num(parts[1])?;
        let points: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("`{}` is not a point count", parts[2]))?;
        if points == 0 {
            return Err("sweep needs at least one point".into());
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err("sweep endpoints must be finite".into());
        }
        let scale = match parts.get(3).map(|p| p.trim()) {
            None => None,
            Some("lin") | Some("linear") => Some(Scale::Linear),
            Some("log") => Some(Scale::Log),
            Some(other) => return Err(format!("unknown sweep scale `{other}`")),
        };
        Ok(SweepSpec {
            start,
            stop,
            points,
            scale,
        })
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.points)?;
        match self.scale {
            Some(Scale::Linear) => write!(f, ":lin"),
            Some(Scale::Log) => write!(f, ":log"),
            None => Ok(()),
        }
    }
}
