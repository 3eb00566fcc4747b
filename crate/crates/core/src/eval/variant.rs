use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::{RankingMethod, RetentionPolicy};

/// A ranking method paired with a retention policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variant {
    pub method: RankingMethod,
    pub policy: RetentionPolicy,
}

impl Variant {
    pub const CONTROL: Variant = Variant {
        method: RankingMethod::Identity,
        policy: RetentionPolicy::Full,
    };

    pub fn new(method: RankingMethod, policy: RetentionPolicy) -> Result<Self> {
        if policy == RetentionPolicy::Superreduct && method != RankingMethod::Ofrfs {
            return Err(Error::InvalidArgument(format!(
                "superreduct retention is only defined for ofrfs, not {method}"
            )));
        }
        Ok(Variant { method, policy })
    }

    pub fn is_control(&self) -> bool {
        *self == Variant::CONTROL
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_control() {
            f.write_str("control")
        } else {
            write!(f, "{}-{}", self.method, self.policy)
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    /// `control`, or `<method>-<policy>` such as `ofrfs-0.9` or `mi-1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "control" {
            return Ok(Variant::CONTROL);
        }
        let (m, p) = t
            .split_once('-')
            .ok_or_else(|| Error::InvalidArgument(format!("variant `{s}` is not `control` or `method-policy`")))?;
        Variant::new(m.parse()?, p.parse()?)
    }
}
