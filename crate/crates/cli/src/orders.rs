//! Default truncation orders and the `KZB_DEFAULT_ORDERS` override.

pub const ENV_VAR: &str = "KZB_DEFAULT_ORDERS";

/// Word length `n`, u-order `k`, q-order `m`, and the degree of numeric transports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orders {
    pub n: usize,
    pub k: i32,
    pub m: i32,
    pub numeric_n: usize,
}

impl Default for Orders {
    fn default() -> Self {
        Orders { n: 10, k: 6, m: 20, numeric_n: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdersError {
    #[error("{ENV_VAR} must look like \"N,K,M\", got {0:?}")]
    Malformed(String),
    #[error("invalid orders: {0}")]
    Invalid(String),
}

impl Orders {
    /// Parse `"N,K,M"`.
    pub fn parse(s: &str) -> Result<Orders, OrdersError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(OrdersError::Malformed(s.to_string()));
        }
        let bad = || OrdersError::Malformed(s.to_string());
        let o = Orders {
            n: parts[0].parse().map_err(|_| bad())?,
            k: parts[1].parse().map_err(|_| bad())?,
            m: parts[2].parse().map_err(|_| bad())?,
            ..Orders::default()
        };
        o.validate()?;
        Ok(o)
    }

    /// Defaults, overridden by the environment variable when set.
    pub fn from_env() -> Result<Orders, OrdersError> {
        match std::env::var(ENV_VAR) {
            Ok(s) if !s.trim().is_empty() => Orders::parse(&s),
            _ => Ok(Orders::default()),
        }
    }

    pub fn validate(&self) -> Result<(), OrdersError> {
        if self.n < 2 || self.n > 24 {
            return Err(OrdersError::Invalid(format!("Lie degree {} outside 2..=24", self.n)));
        }
        if self.k < 1 || self.m < 1 {
            return Err(OrdersError::Invalid(format!("u-order {} and q-order {} must be positive", self.k, self.m)));
        }
        if self.numeric_n < 1 || self.numeric_n > 5 {
            return Err(OrdersError::Invalid(format!("numeric degree {} outside 1..=5", self.numeric_n)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_orders() {
        assert_eq!(Orders::parse("8, 6, 12").unwrap(), Orders { n: 8, k: 6, m: 12, numeric_n: 3 });
        assert!(Orders::parse("8,6").is_err());
        assert!(Orders::parse("1,6,12").is_err());
        assert!(Orders::parse("8,x,12").is_err());
    }
}
