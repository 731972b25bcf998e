//! compile -> JSON -> parse -> verify, over whole function spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rom_core::boolean::anf_of;
use rom_core::synth::barrington::compile_function_barrington;
use rom_core::synth::classical::compile_pair;
use rom_core::synth::quantum::{compile_function, AndStrategy};
use rom_core::verify::verify_program;
use rom_core::{Anf, RomProgram, TruthTable, VectorFunction};

fn table(j: usize, code: u64) -> TruthTable {
    TruthTable::from_fn(j, |u| code >> u & 1 == 1).unwrap()
}

fn assert_round_trip_passes(p: &RomProgram, expected: Vec<TruthTable>, what: &str) {
    let parsed = RomProgram::from_json(&p.to_json()).unwrap();
    assert_eq!(&parsed, p, "{what}");
    let verdict = verify_program(&parsed, &VectorFunction::new(expected).unwrap()).unwrap();
    assert!(verdict.is_pass(), "{what}: {verdict:?}");
}

#[test]
fn one_qubit_up_to_three_variables() {
    for j in 1..=3usize {
        for code in 0..1u64 << (1 << j) {
            let t = table(j, code);
            for strategy in [AndStrategy::Naive, AndStrategy::Fast] {
                let p = compile_function(&anf_of(&t), j, strategy).unwrap();
                assert_round_trip_passes(&p, vec![t.clone()], &format!("quantum1 j={j} {t}"));
            }
        }
    }
}

#[test]
fn two_bits_every_four_variable_function() {
    let zero = Anf::zero(4);
    for code in 0..1u64 << 16 {
        let t = table(4, code);
        let p = compile_pair(&anf_of(&t), &zero, 4).unwrap();
        assert_round_trip_passes(&p, vec![t, TruthTable::zero(4)], &format!("classical2 {code:#06x}"));
    }
}

#[test]
fn two_bits_every_pair_up_to_two_variables() {
    for j in 1..=2usize {
        let n = 1u64 << (1 << j);
        for c1 in 0..n {
            for c2 in 0..n {
                let (t1, t2) = (table(j, c1), table(j, c2));
                let p = compile_pair(&anf_of(&t1), &anf_of(&t2), j).unwrap();
                assert_round_trip_passes(&p, vec![t1, t2], &format!("classical2 j={j}"));
            }
        }
    }
}

#[test]
fn three_bits_every_function_up_to_three_variables() {
    for j in 1..=3usize {
        for code in 0..1u64 << (1 << j) {
            let t = table(j, code);
            let p = compile_function_barrington(&anf_of(&t), j).unwrap();
            assert_round_trip_passes(&p, vec![t], &format!("classical3 j={j} {code:#x}"));
        }
    }
}

#[test]
fn three_bits_sampled_four_variable_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut codes: Vec<u64> = vec![0, 0xffff, 0x8000, 0x0001, 0x6996, 0x7fff];
    codes.extend((0..4096).map(|_| rng.gen_range(0..1u64 << 16)));
    for code in codes {
        let t = table(4, code);
        let p = compile_function_barrington(&anf_of(&t), 4).unwrap();
        assert_round_trip_passes(&p, vec![t], &format!("classical3 j=4 {code:#06x}"));
    }
}
