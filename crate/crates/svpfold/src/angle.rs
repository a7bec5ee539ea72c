//! Angles written as `pi/N`, `2pi/3`, `3*pi/4`, `pi` or plain radians.

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let lower = s.to_ascii_lowercase();
    let value = match lower.find("pi") {
        None => lower
            .parse::<f64>()
            .map_err(|_| format!("invalid angle `{text}`"))?,
        Some(at) => {
            let head = lower[..at].trim_end_matches('*');
            let coefficient = match head {
                "" => 1.0,
                "-" => -1.0,
                h => h
                    .parse::<f64>()
                    .map_err(|_| format!("invalid coefficient in angle `{text}`"))?,
            };
            let tail = &lower[at + 2..];
            let divisor = match tail.strip_prefix('/') {
                None if tail.is_empty() => 1.0,
                None => return Err(format!("invalid angle `{text}`")),
                Some(d) => d
                    .parse::<f64>()
                    .map_err(|_| format!("invalid divisor in angle `{text}`"))?,
            };
            if divisor == 0.0 {
                return Err(format!("zero divisor in angle `{text}`"));
            }
            coefficient * PI / divisor
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle `{text}` is not finite"))
    }
}
