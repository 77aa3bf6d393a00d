use burstfft::affine::AffineGroupParams;
use burstfft::decode::{ListDecodeConfig, ListDecoder, UniqueDecodeConfig, UniqueDecoder};
use burstfft::gfft::GfftPlan;
use burstfft::hermitian::{HermitianCode, HermitianCurve};
use burstfft::irs::{Folded, FoldedRs};
use burstfft::poly::Poly;
use burstfft::rs::{is_burst, DecodeStatus, RsCode};
use burstfft::{Elem, Field, FieldParams};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn rs(field: &str, group: &str, k: usize) -> RsCode {
    let desc: FieldParams = field.parse().unwrap();
    let f = Arc::new(Field::new(desc).unwrap());
    let pl = GfftPlan::new(f, &AffineGroupParams::parse_for(group, desc.p).unwrap()).unwrap();
    RsCode::new(Arc::new(pl), k, false).unwrap()
}

fn gf256_code() -> &'static RsCode {
    static C: OnceLock<RsCode> = OnceLock::new();
    C.get_or_init(|| rs("2^8:0x11d", "t=255,tfac=255,gamma=0x1", 45))
}

fn folded() -> &'static FoldedRs {
    static C: OnceLock<FoldedRs> = OnceLock::new();
    C.get_or_init(|| FoldedRs::new(rs("2^8:0x11d", "t=255,tfac=3.5.17,gamma=0x1", 45), 2).unwrap())
}

fn message(f: &Field, k: usize, seed: &[u64]) -> Vec<Elem> {
    (0..k).map(|i| (seed[i % seed.len()].wrapping_add(i as u64 * 31) % f.order()) as Elem).collect()
}

/// A burst of exactly `len` symbols at `start` (non-wrapping) with nonzero ends.
fn add_burst(f: &Field, word: &mut [Elem], start: usize, len: usize, vals: &[u64]) {
    let q = f.order();
    for t in 0..len {
        let mut x = (vals[t % vals.len()].wrapping_mul(t as u64 + 7) % q) as Elem;
        if (t == 0 || t + 1 == len) && x == 0 {
            x = 1;
        }
        word[start + t] = f.add(word[start + t], x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn codewords_have_zero_syndrome(seed in prop::collection::vec(any::<u64>(), 1..20)) {
        let code = gf256_code();
        let cw = code.encode(&message(code.field(), code.k(), &seed)).unwrap();
        prop_assert!(code.syndrome(&cw).unwrap().s.is_zero());
        prop_assert!(code.is_codeword(&cw).unwrap());
    }

    #[test]
    fn list_decoding_complete_and_sound(
        seed in prop::collection::vec(any::<u64>(), 1..20),
        len in 1..=180usize,
        start in any::<usize>(),
        vals in prop::collection::vec(any::<u64>(), 1..20),
    ) {
        let code = folded();
        let f = code.field();
        let dec = ListDecoder::new(code.clone(), ListDecodeConfig { radius: None, parallel: true }).unwrap();
        prop_assert_eq!(dec.radius(), 180);
        let sent = code.encode(&message(f, code.dim(), &seed)).unwrap();
        let mut rx = sent.clone();
        add_burst(f, &mut rx, start % (code.n() - len + 1), len, &vals);
        let list = dec.decode(&rx).unwrap();
        prop_assert!(list.contains(&sent));
        prop_assert!(list.len() <= code.shape().k_s + 1);
        for c in &list {
            prop_assert!(code.code().is_codeword(c).unwrap());
            let e: Vec<Elem> = rx.iter().zip(c).map(|(&a, &b)| f.sub(a, b)).collect();
            prop_assert!(is_burst(&e, dec.radius()));
        }
    }

    #[test]
    fn unique_decoding_sound_and_deterministic(
        seed in prop::collection::vec(any::<u64>(), 1..20),
        len in 0..=200usize,
        start in any::<usize>(),
        vals in prop::collection::vec(any::<u64>(), 1..20),
    ) {
        let code = folded();
        let f = code.field();
        let cfg = |parallel| UniqueDecodeConfig { e: 2, radius: None, strict: false, parallel };
        let par = UniqueDecoder::new(code.clone(), cfg(true)).unwrap();
        let seq = UniqueDecoder::new(code.clone(), cfg(false)).unwrap();
        let sent = code.encode(&message(f, code.dim(), &seed)).unwrap();
        let mut rx = sent.clone();
        add_burst(f, &mut rx, start % (code.n() - len + 1), len, &vals);
        let out = par.decode(&rx).unwrap();
        prop_assert_eq!(&out, &seq.decode(&rx).unwrap());
        prop_assert_eq!(&out, &par.decode(&rx).unwrap());
        if out.status == DecodeStatus::Ok {
            prop_assert!(code.code().is_codeword(&out.codeword).unwrap());
            let e: Vec<Elem> = rx.iter().zip(&out.codeword).map(|(&a, &b)| f.sub(a, b)).collect();
            prop_assert!(is_burst(&e, par.radius()));
            if len <= par.radius() {
                prop_assert_eq!(&out.codeword, &sent);
            }
        } else {
            prop_assert_eq!(&out.codeword, &rx);
        }
    }
}

#[test]
fn lambda_shift_covariance() {
    for code in
        [rs("13", "t=12,tfac=12,gamma=0x1", 4), rs("2^8:0x11d", "t=255,tfac=255,gamma=0x7", 200), gf256_code().clone()]
    {
        let f = code.field();
        let (xi, alpha) = code.cyclic_params().unwrap();
        let r = code.n() - code.k();
        let shifted = |i: usize| {
            let mut acc = Poly::constant(1);
            for j in (i - 1)..(i + r - 2) {
                let root = f.mul(xi, f.pow(alpha, j as u64));
                acc = acc.mul(f, &Poly::new(vec![1, f.neg(root)]));
            }
            acc
        };
        let l1 = code.lambda1().unwrap();
        assert_eq!(Poly::new(l1.to_vec()), shifted(1));
        for i in [2, 3, code.n() / 2, code.n()] {
            let scaled: Vec<Elem> =
                l1.iter().enumerate().map(|(j, &c)| f.mul(c, f.pow(alpha, (j * (i - 1)) as u64))).collect();
            assert_eq!(Poly::new(scaled), shifted(i), "i={i}");
        }
    }
}

/// GF(13), n = 12, k = 4: every burst of length ℓ ≤ r - 2 at every start
/// leaves Γ vanishing on the r - ℓ exponents ending at the start.
#[test]
fn gamma_root_run_exhaustive() {
    let code = rs("13", "t=12,tfac=12,gamma=0x1", 4);
    let f = code.field();
    let (n, r) = (12usize, 8usize);
    let (_, alpha) = code.cyclic_params().unwrap();
    let cw = code.encode(&[3, 1, 4, 1]).unwrap();
    for ell in 1..=r - 2 {
        for start in 0..n {
            for pattern in 0..20u64 {
                let mut rx = cw.clone();
                for t in 0..ell {
                    let x = if t == 0 || t + 1 == ell {
                        1 + (pattern + t as u64) % 12
                    } else {
                        (pattern * 7 + t as u64) % 13
                    };
                    let i = (start + t) % n;
                    rx[i] = f.add(rx[i], x as Elem);
                }
                let gamma = code.syndrome(&rx).unwrap().gamma;
                for u in 0..r - ell {
                    let x = f.pow(alpha, ((start + n - u) % n) as u64);
                    assert_eq!(gamma.eval(f, x), 0, "ell={ell} start={start} u={u}");
                }
                let out = code.wu_decode(&rx, 0).unwrap();
                if ell < r - 1 {
                    assert_eq!(out.codeword, cw, "ell={ell} start={start}");
                }
            }
        }
    }
}

#[test]
fn exhaustive_small_list() {
    // GF(13), n = 12 folded by 4: every codeword and every single-column burst
    let code = FoldedRs::new(rs("13", "t=12,tfac=2.2.3,gamma=0x1", 4), 2).unwrap();
    let dec = ListDecoder::new(code.clone(), ListDecodeConfig::default()).unwrap();
    let f = code.field();
    for m in 0..13u32.pow(2) {
        let sent = code.encode(&[m % 13, m / 13, 1, 0]).unwrap();
        for start in 0..=code.n() - dec.radius() {
            let mut rx = sent.clone();
            add_burst(f, &mut rx, start, dec.radius(), &[m as u64 + 1]);
            let list = dec.decode(&rx).unwrap();
            assert!(list.contains(&sent), "m={m} start={start}");
        }
    }
}

fn hermitian(kappa: usize, lambda: usize) -> HermitianCode {
    let d = 2 * kappa.trailing_zeros();
    let f = Arc::new(Field::new(FieldParams::with_default_modulus(2, d).unwrap()).unwrap());
    let curve = Arc::new(HermitianCurve::new(f, kappa).unwrap());
    let base = AffineGroupParams::additive((0..d).map(|i| 1 << i).collect(), 0);
    HermitianCode::new(curve, &base, lambda).unwrap()
}

#[test]
fn hermitian_shape_and_distance() {
    for kappa in [2usize, 4] {
        let g = kappa * (kappa - 1) / 2;
        for lambda in 2 * g..2 * g + 6 {
            let code = hermitian(kappa, lambda);
            assert_eq!(code.len(), kappa.pow(3));
            assert_eq!(code.dim(), lambda + 1 - g);
            let mut vals: Vec<usize> = code.basis_set().iter().map(|&(j, u)| j * kappa + u * (kappa + 1)).collect();
            vals.sort_unstable();
            vals.dedup();
            assert_eq!(vals.len(), code.dim());
        }
    }
    // κ = 2: every nonzero codeword has weight at least N - λ
    for lambda in 2..=5 {
        let code = hermitian(2, lambda);
        let k = code.dim() as u32;
        for m in 1..4u32.pow(k) {
            let msg: Vec<Elem> = (0..k).map(|i| (m >> (2 * i)) & 3).collect();
            let w = code.encode(&msg).unwrap().iter().filter(|&&x| x != 0).count();
            assert!(w >= 8 - lambda, "λ={lambda} weight {w}");
        }
    }
}
