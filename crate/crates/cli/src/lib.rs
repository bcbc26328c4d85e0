//! Command implementations and the HTTP service behind the `greenseq` binary.

pub mod commands;
pub mod server;

/// Parses a comma separated vertex list such as `1,2,1`; the empty string is the empty list.
pub fn parse_vertices(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("invalid vertex `{t}`")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::parse_vertices;

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertices("1, 2,1").unwrap(), vec![1, 2, 1]);
        assert_eq!(parse_vertices("").unwrap(), Vec::<usize>::new());
        assert!(parse_vertices("1,x").is_err());
    }
}
