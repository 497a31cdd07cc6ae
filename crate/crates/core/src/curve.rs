use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn of(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Plus
        } else if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Dfa1d,
    Dfa2d,
    Dcca1d,
    Dcca2d,
}

/// One measured point of the power law: scale s, fluctuation magnitude f = sqrt(|F2|),
/// and the sign of the underlying (possibly negative, for DCCA) mean detrended product.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CurvePoint {
    pub scale: usize,
    pub f: f64,
    pub sign: Sign,
}

/// Ordered (s, F(s)) pairs; the measured side of F(s) ~ s^alpha.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FluctuationCurve {
    pub kind: CurveKind,
    pub points: Vec<CurvePoint>,
}

impl FluctuationCurve {
    pub fn scales(&self) -> impl Iterator<Item = usize> + '_ {
        self.points.iter().map(|p| p.scale)
    }

    /// True iff every nonzero point carries the same sign.
    pub fn sign_consistent(&self) -> bool {
        let mut seen: Option<Sign> = None;
        for p in &self.points {
            if p.sign == Sign::Zero {
                continue;
            }
            match seen {
                None => seen = Some(p.sign),
                Some(s) if s != p.sign => return false,
                _ => {}
            }
        }
        true
    }
}
