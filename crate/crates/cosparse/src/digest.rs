//! Deterministic 128-bit hashing for canonical, cross-graph-comparable keys.
//!
//! Refinement itself never relies on these hashes for injectivity (colors are
//! interned by full-record comparison); digests only turn already-canonical
//! structures into fixed-width values. Two independent 64-bit lanes with a
//! murmur-style finalizer keep accidental collisions far below desk scale.

const SEED_A: u64 = 0x243f_6a88_85a3_08d3;
const SEED_B: u64 = 0x1319_8a2e_0370_7344;
const MUL_A: u64 = 0x9e37_79b9_7f4a_7c15;
const MUL_B: u64 = 0xc2b2_ae3d_27d4_eb4f;

#[inline]
fn mix(mut h: u64) -> u64 {
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h = h.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    h ^= h >> 33;
    h
}

/// Domain tags keep digests from different structures disjoint by design.
#[derive(Clone, Copy, Debug)]
pub enum Domain {
    InitRecord,
    RefineStep,
    Component,
    Graph,
    NodeInit,
    NodeStep,
    NodeReadout,
    Wl1Graph,
}

/// Streaming 128-bit hasher; input order is significant.
#[derive(Clone)]
pub struct Hasher128 {
    a: u64,
    b: u64,
    len: u64,
}

impl Hasher128 {
    pub fn new(domain: Domain) -> Self {
        let tag = domain as u64 + 1;
        Hasher128 {
            a: mix(SEED_A ^ tag.wrapping_mul(MUL_A)),
            b: mix(SEED_B ^ tag.wrapping_mul(MUL_B)),
            len: 0,
        }
    }

    #[inline]
    pub fn write_u64(&mut self, x: u64) {
        self.len = self.len.wrapping_add(1);
        self.a = mix(self.a ^ mix(x ^ MUL_A));
        self.b = mix(self.b ^ mix(x.rotate_left(32) ^ MUL_B));
    }

    #[inline]
    pub fn write_u128(&mut self, x: u128) {
        self.write_u64(x as u64);
        self.write_u64((x >> 64) as u64);
    }

    pub fn finish(&self) -> u128 {
        let a = mix(self.a ^ self.len);
        let b = mix(self.b ^ self.len.rotate_left(17));
        let hi = mix(a ^ mix(b));
        let lo = mix(b ^ mix(a).rotate_left(23));
        ((hi as u128) << 64) | lo as u128
    }
}

/// Hex rendering used wherever signatures appear in reports.
pub fn hex128(x: u128) -> String {
    format!("{x:032x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn digest_of(domain: Domain, items: &[u64]) -> u128 {
        let mut h = Hasher128::new(domain);
        for &x in items {
            h.write_u64(x);
        }
        h.finish()
    }

    #[test]
    fn deterministic() {
        let a = digest_of(Domain::Graph, &[1, 2, 3]);
        let b = digest_of(Domain::Graph, &[1, 2, 3]);
        assert_eq!(a, b);
    }

    #[test]
    fn order_and_domain_sensitive() {
        assert_ne!(
            digest_of(Domain::Graph, &[1, 2]),
            digest_of(Domain::Graph, &[2, 1])
        );
        assert_ne!(
            digest_of(Domain::Graph, &[7]),
            digest_of(Domain::Component, &[7])
        );
        assert_ne!(
            digest_of(Domain::Graph, &[0]),
            digest_of(Domain::Graph, &[0, 0])
        );
    }

    #[test]
    fn no_collisions_on_small_inputs() {
        let mut seen = HashSet::new();
        for x in 0..2000u64 {
            for y in 0..8u64 {
                assert!(seen.insert(digest_of(Domain::RefineStep, &[x, y])));
            }
        }
    }

    #[test]
    fn hex_width() {
        assert_eq!(hex128(0).len(), 32);
        assert_eq!(hex128(u128::MAX).len(), 32);
    }
}
