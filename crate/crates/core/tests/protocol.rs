use std::io::Write;
use std::net::TcpStream;

use hoo_explorer::protocol::{
    read_frame, write_frame, RemoteScorer, ScoreRequest, ScoreResponse, ScoreServer, Status, WirePose,
    PROTOCOL_VERSION,
};
use hoo_explorer::scorer::ConstantScorer;
use hoo_explorer::suite::{default_suite_dir, load_suite};
use hoo_explorer::tiling::TileLayout;
use hoo_explorer::{run, CameraPose, Direction, HooExplorer, HooParams, ScoreError, Scorer};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn wire_pose() -> impl Strategy<Value = WirePose> {
    (
        prop::array::uniform3(-1e6f64..1e6),
        prop::array::uniform3(-1.0f64..1.0),
        0.1f32..179.0,
    )
        .prop_map(|(position, direction, fov)| WirePose { position, direction, fov })
}

proptest! {
    #[test]
    fn request_round_trip(id in any::<u64>(), poses in prop::collection::vec(wire_pose(), 1..40)) {
        let req = ScoreRequest { protocol_version: PROTOCOL_VERSION, request_id: id, poses };
        prop_assert_eq!(ScoreRequest::decode(&req.encode()).unwrap(), req);
    }

    #[test]
    fn response_round_trip(id in any::<u64>(), status in 0u8..3, scores in prop::collection::vec(0.0f32..=1.0, 0..40)) {
        let resp = ScoreResponse {
            protocol_version: PROTOCOL_VERSION,
            request_id: id,
            status: Status::try_from(status).unwrap(),
            scores,
        };
        prop_assert_eq!(ScoreResponse::decode(&resp.encode()).unwrap(), resp);
    }

    #[test]
    fn every_truncation_is_rejected(m in 1usize..6, cut in 1usize..300) {
        let poses: Vec<CameraPose> = (0..m).map(|_| CameraPose::new([0.0; 3], Direction::UP)).collect();
        let bytes = ScoreRequest::new(5, &poses).encode();
        let cut = cut.min(bytes.len());
        prop_assert!(ScoreRequest::decode(&bytes[..bytes.len() - cut]).is_err());
    }

    #[test]
    fn tile_untile_round_trip(side in 1usize..5, h in 1usize..9, w in 1usize..9, n in 1usize..40, seed in any::<u64>()) {
        let layout = TileLayout::new(side * side, h, w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let images: Vec<u8> = (0..n * h * w * 3).map(|_| rng.gen()).collect();
        let textures = layout.tile(&images, n, 3).unwrap();
        prop_assert_eq!(textures.len(), layout.texture_count(n) * layout.texture_bytes(3));
        prop_assert_eq!(layout.untile(&textures, n, 3).unwrap(), images.clone());
        // re-tiling the untiled images reproduces the occupied texture bytes
        prop_assert_eq!(layout.tile(&layout.untile(&textures, n, 3).unwrap(), n, 3).unwrap(), textures);
    }
}

#[test]
fn tile_indices_cover_each_texture_exactly_once() {
    let layout = TileLayout::new(9, 3, 5).unwrap();
    let mut hits = vec![0u8; 2 * layout.texture_height() * layout.texture_width()];
    for k in 0..18 {
        let p = layout.tile_indices(k);
        for r in 0..3 {
            for c in 0..5 {
                hits[(p.texture * layout.texture_height() + p.row_offset + r) * layout.texture_width() + p.col_offset + c] += 1;
            }
        }
    }
    assert!(hits.iter().all(|&h| h == 1));
}

#[test]
fn full_size_texture_round_trip() {
    let layout = TileLayout::with_default_tiles(36).unwrap();
    assert_eq!(layout.texture_width(), 1344);
    let n = 40;
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let images: Vec<u8> = (0..n * 224 * 224 * 3).map(|_| rng.gen()).collect();
    let textures = layout.tile(&images, n, 3).unwrap();
    assert_eq!(textures.len(), 2 * 1344 * 1344 * 3);
    assert_eq!(layout.untile(&textures, n, 3).unwrap(), images);
}

fn random_poses(scene_bounds: hoo_explorer::Region, count: usize, seed: u64) -> Vec<CameraPose> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = [0, 1, 2].map(|i| rng.gen_range(scene_bounds.min[i]..=scene_bounds.max[i]));
            let d = Direction::normalize([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
                .unwrap_or(Direction::UP);
            CameraPose::new(p, d)
        })
        .collect()
}

#[test]
fn remote_matches_local_on_every_suite_scene() {
    for (k, scene) in load_suite(default_suite_dir()).unwrap().into_iter().enumerate() {
        let poses = random_poses(scene.bounds, 100, k as u64);
        let local = scene.score_batch(&poses).unwrap();
        let server = ScoreServer::bind("127.0.0.1:0", scene).unwrap().spawn().unwrap();
        let remote = RemoteScorer::connect(server.addr()).unwrap().score_batch(&poses).unwrap();
        let diff = local.iter().zip(&remote).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(diff <= 1e-6, "scene {k}: max diff {diff}");
    }
}

#[test]
fn responses_arrive_in_request_order_and_bad_frames_keep_the_connection() {
    let server = ScoreServer::bind("127.0.0.1:0", ConstantScorer(0.3)).unwrap().spawn().unwrap();
    let mut stream = TcpStream::connect(server.addr()).unwrap();
    let pose = [CameraPose::new([1.0; 3], Direction::UP)];
    let good = ScoreRequest::new(10, &pose).encode();
    let truncated = &ScoreRequest::new(11, &pose).encode()[..30];
    let good2 = ScoreRequest::new(12, &pose).encode();
    // pipeline all three frames before reading anything
    let mut batch = Vec::new();
    for payload in [&good[..], truncated, &good2[..]] {
        write_frame(&mut batch, payload).unwrap();
    }
    stream.write_all(&batch).unwrap();
    let replies: Vec<ScoreResponse> = (0..3)
        .map(|_| ScoreResponse::decode(&read_frame(&mut stream).unwrap().unwrap()).unwrap())
        .collect();
    assert_eq!(replies.iter().map(|r| r.request_id).collect::<Vec<_>>(), vec![10, 11, 12]);
    assert_eq!(replies[0].status, Status::Ok);
    assert_eq!(replies[1].status, Status::BadRequest);
    assert!(replies[1].scores.is_empty());
    assert_eq!(replies[2].scores, vec![0.3f32]);
}

#[test]
fn concurrent_clients() {
    let server = ScoreServer::bind("127.0.0.1:0", ConstantScorer(0.5)).unwrap().spawn().unwrap();
    let addr = server.addr();
    let handles: Vec<_> = (0..4)
        .map(|t| {
            std::thread::spawn(move || {
                let remote = RemoteScorer::connect(addr).unwrap();
                for m in 1..20 {
                    let poses = vec![CameraPose::new([t as f64; 3], Direction::UP); m];
                    assert_eq!(remote.score_batch(&poses).unwrap(), vec![0.5; m]);
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
}

#[test]
fn remote_exploration_matches_local_membership() {
    let scene = load_suite(default_suite_dir()).unwrap().swap_remove(4);
    let params = HooParams { horizon: 300, seed: 11, ..Default::default() };
    let mut local = HooExplorer::new(params, scene.bounds).unwrap();
    local.run_to_horizon(&scene).unwrap();
    let server = ScoreServer::bind("127.0.0.1:0", scene.clone()).unwrap().spawn().unwrap();
    let remote_scorer = RemoteScorer::connect(server.addr()).unwrap();
    let mut remote = HooExplorer::new(params, scene.bounds).unwrap();
    remote.run_to_horizon(&remote_scorer).unwrap();
    assert_eq!(local.tree().members(), remote.tree().members());
    for (a, b) in local.log().records.iter().zip(&remote.log().records) {
        assert!((a.reward - b.reward).abs() <= 1e-6);
    }
}

#[test]
fn lost_server_aborts_the_run_with_a_partial_log() {
    let scene = load_suite(default_suite_dir()).unwrap().swap_remove(0);
    let server = ScoreServer::bind("127.0.0.1:0", scene.clone()).unwrap().spawn().unwrap();
    let remote = RemoteScorer::connect(server.addr()).unwrap();
    let mut explorer = HooExplorer::new(HooParams::default(), scene.bounds).unwrap();
    for _ in 0..5 {
        explorer.step(&remote).unwrap();
    }
    // a server that answers with garbage ids is indistinguishable from a broken one
    let bogus = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let bogus_addr = bogus.local_addr().unwrap();
    std::thread::spawn(move || {
        let (mut s, _) = bogus.accept().unwrap();
        let _ = read_frame(&mut s);
        let _ = write_frame(&mut s, &ScoreResponse::ok(999, vec![0.5; 15]).encode());
    });
    let broken = RemoteScorer::connect(bogus_addr).unwrap();
    assert!(matches!(explorer.step(&broken), Err(hoo_explorer::ExploreError::Score(ScoreError::Transport(_)))));
    assert!(matches!(broken.score_batch(&[CameraPose::new([0.0; 3], Direction::UP)]), Err(ScoreError::Transport(_))));
    assert_eq!(explorer.log().len(), 5);
    assert!(!explorer.log().complete);

    let log = run(HooParams { horizon: 20, ..Default::default() }, &broken, scene.bounds).unwrap();
    assert!(log.is_empty() && !log.complete);
}
