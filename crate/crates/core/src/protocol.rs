//! Batched remote scoring over TCP.
//!
//! Every message is a frame: a little-endian `u32` payload length followed
//! by the payload. A request carries the whole direction fan of one region:
//!
//! ```text
//! request  = version:u16 request_id:u64 m:u32 { position:f64x3 direction:f64x3 fov:f32 } x m
//! response = version:u16 request_id:u64 status:u8 count:u32 { score:f32 } x count
//! ```
//!
//! All integers and floats are little-endian. A connection carries one
//! request at a time and responses come back in request order.

use std::io::{self, Read, Write};
use std::net::{Shutdown, SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

use thiserror::Error;

use crate::error::{GeometryError, ScoreError};
use crate::geometry::{CameraPose, Direction, Vec3};
use crate::scorer::Scorer;

pub const PROTOCOL_VERSION: u16 = 1;

/// Frames longer than this are refused without reading the payload.
pub const MAX_FRAME_BYTES: u32 = 64 << 20;

const REQUEST_HEADER: usize = 2 + 8 + 4;
const POSE_BYTES: usize = 6 * 8 + 4;
const RESPONSE_HEADER: usize = 2 + 8 + 1 + 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WireError {
    #[error("payload truncated: need {needed} bytes, have {got}")]
    Truncated { needed: usize, got: usize },
    #[error("{0} unexpected trailing bytes")]
    Trailing(usize),
    #[error("unsupported protocol version {0}")]
    Version(u16),
    #[error("request carries no poses")]
    EmptyRequest,
    #[error("unknown status {0}")]
    Status(u8),
    #[error("pose {index}: {source}")]
    Pose {
        index: usize,
        #[source]
        source: GeometryError,
    },
    #[error("pose {0} has a non-finite position")]
    Position(usize),
}

/// Response status byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Ok = 0,
    BadRequest = 1,
    ScorerError = 2,
}

impl TryFrom<u8> for Status {
    type Error = WireError;

    fn try_from(b: u8) -> Result<Self, WireError> {
        match b {
            0 => Ok(Status::Ok),
            1 => Ok(Status::BadRequest),
            2 => Ok(Status::ScorerError),
            other => Err(WireError::Status(other)),
        }
    }
}

/// A pose as it travels on the wire. The field of view is narrowed to `f32`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirePose {
    pub position: Vec3,
    pub direction: Vec3,
    pub fov: f32,
}

impl From<&CameraPose> for WirePose {
    fn from(p: &CameraPose) -> Self {
        WirePose {
            position: p.position,
            direction: p.direction.as_array(),
            fov: p.fov_degrees as f32,
        }
    }
}

impl WirePose {
    /// Checks the pose invariants: finite position, unit direction within
    /// 1e-6, field of view in (0, 180).
    pub fn to_pose(&self) -> Result<CameraPose, GeometryError> {
        CameraPose::new(self.position, Direction::new(self.direction)?).with_fov(self.fov as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRequest {
    pub protocol_version: u16,
    pub request_id: u64,
    pub poses: Vec<WirePose>,
}

impl ScoreRequest {
    pub fn new(request_id: u64, poses: &[CameraPose]) -> Self {
        ScoreRequest {
            protocol_version: PROTOCOL_VERSION,
            request_id,
            poses: poses.iter().map(WirePose::from).collect(),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(REQUEST_HEADER + POSE_BYTES * self.poses.len());
        out.extend_from_slice(&self.protocol_version.to_le_bytes());
        out.extend_from_slice(&self.request_id.to_le_bytes());
        out.extend_from_slice(&(self.poses.len() as u32).to_le_bytes());
        for p in &self.poses {
            for v in p.position.iter().chain(&p.direction) {
                out.extend_from_slice(&v.to_le_bytes());
            }
            out.extend_from_slice(&p.fov.to_le_bytes());
        }
        out
    }

    /// Structural decode: version, pose count and exact length. Pose
    /// invariants are checked by [`camera_poses`](Self::camera_poses).
    pub fn decode(bytes: &[u8]) -> Result<Self, WireError> {
        let mut r = Cursor::new(bytes);
        let protocol_version = r.u16()?;
        if protocol_version != PROTOCOL_VERSION {
            return Err(WireError::Version(protocol_version));
        }
        let request_id = r.u64()?;
        let m = r.u32()? as usize;
        if m == 0 {
            return Err(WireError::EmptyRequest);
        }
        r.need(m.saturating_mul(POSE_BYTES))?;
        let poses = (0..m)
            .map(|_| {
                Ok(WirePose {
                    position: [r.f64()?, r.f64()?, r.f64()?],
                    direction: [r.f64()?, r.f64()?, r.f64()?],
                    fov: r.f32()?,
                })
            })
            .collect::<Result<_, WireError>>()?;
        r.finish()?;
        Ok(ScoreRequest { protocol_version, request_id, poses })
    }

    pub fn camera_poses(&self) -> Result<Vec<CameraPose>, WireError> {
        self.poses
            .iter()
            .enumerate()
            .map(|(index, p)| {
                if !p.position.iter().all(|v| v.is_finite()) {
                    return Err(WireError::Position(index));
                }
                p.to_pose().map_err(|source| WireError::Pose { index, source })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreResponse {
    pub protocol_version: u16,
    pub request_id: u64,
    pub status: Status,
    pub scores: Vec<f32>,
}

impl ScoreResponse {
    pub fn ok(request_id: u64, scores: Vec<f32>) -> Self {
        ScoreResponse { protocol_version: PROTOCOL_VERSION, request_id, status: Status::Ok, scores }
    }

    pub fn failure(request_id: u64, status: Status) -> Self {
        ScoreResponse { protocol_version: PROTOCOL_VERSION, request_id, status, scores: Vec::new() }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(RESPONSE_HEADER + 4 * self.scores.len());
        out.extend_from_slice(&self.protocol_version.to_le_bytes());
        out.extend_from_slice(&self.request_id.to_le_bytes());
        out.push(self.status as u8);
        out.extend_from_slice(&(self.scores.len() as u32).to_le_bytes());
        for s in &self.scores {
            out.extend_from_slice(&s.to_le_bytes());
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, WireError> {
        let mut r = Cursor::new(bytes);
        let protocol_version = r.u16()?;
        if protocol_version != PROTOCOL_VERSION {
            return Err(WireError::Version(protocol_version));
        }
        let request_id = r.u64()?;
        let status = Status::try_from(r.u8()?)?;
        let count = r.u32()? as usize;
        r.need(count.saturating_mul(4))?;
        let scores = (0..count).map(|_| r.f32()).collect::<Result<_, _>>()?;
        r.finish()?;
        Ok(ScoreResponse { protocol_version, request_id, status, scores })
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    fn need(&self, n: usize) -> Result<(), WireError> {
        let got = self.bytes.len() - self.pos;
        if got < n {
            return Err(WireError::Truncated { needed: self.pos.saturating_add(n), got: self.bytes.len() });
        }
        Ok(())
    }

    fn take<const N: usize>(&mut self) -> Result<[u8; N], WireError> {
        self.need(N)?;
        let out = self.bytes[self.pos..self.pos + N].try_into().expect("length checked");
        self.pos += N;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, WireError> {
        Ok(self.take::<1>()?[0])
    }

    fn u16(&mut self) -> Result<u16, WireError> {
        self.take().map(u16::from_le_bytes)
    }

    fn u32(&mut self) -> Result<u32, WireError> {
        self.take().map(u32::from_le_bytes)
    }

    fn u64(&mut self) -> Result<u64, WireError> {
        self.take().map(u64::from_le_bytes)
    }

    fn f32(&mut self) -> Result<f32, WireError> {
        self.take().map(f32::from_le_bytes)
    }

    fn f64(&mut self) -> Result<f64, WireError> {
        self.take().map(f64::from_le_bytes)
    }

    fn finish(&self) -> Result<(), WireError> {
        match self.bytes.len() - self.pos {
            0 => Ok(()),
            extra => Err(WireError::Trailing(extra)),
        }
    }
}

/// Writes one length-prefixed frame with a single `write_all`.
pub fn write_frame<W: Write>(w: &mut W, payload: &[u8]) -> io::Result<()> {
    let len = u32::try_from(payload.len())
        .ok()
        .filter(|&n| n <= MAX_FRAME_BYTES)
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "frame too large"))?;
    let mut buf = Vec::with_capacity(4 + payload.len());
    buf.extend_from_slice(&len.to_le_bytes());
    buf.extend_from_slice(payload);
    w.write_all(&buf)?;
    w.flush()
}

/// Reads one frame. `Ok(None)` means the peer closed the stream cleanly
/// between frames.
pub fn read_frame<R: Read>(r: &mut R) -> io::Result<Option<Vec<u8>>> {
    let mut len = [0u8; 4];
    let mut filled = 0;
    while filled < 4 {
        match r.read(&mut len[filled..]) {
            Ok(0) if filled == 0 => return Ok(None),
            Ok(0) => return Err(io::ErrorKind::UnexpectedEof.into()),
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    let len = u32::from_le_bytes(len);
    if len > MAX_FRAME_BYTES {
        return Err(io::Error::new(io::ErrorKind::InvalidData, format!("frame of {len} bytes exceeds limit")));
    }
    let mut payload = vec![0u8; len as usize];
    r.read_exact(&mut payload)?;
    Ok(Some(payload))
}

/// Answers one request payload. Malformed payloads get status 1 (echoing
/// the request id when the header is readable); scorer failures and
/// contract violations get status 2.
pub fn handle_payload<S: Scorer + ?Sized>(scorer: &S, payload: &[u8]) -> ScoreResponse {
    let poses = match ScoreRequest::decode(payload).and_then(|req| Ok((req.request_id, req.camera_poses()?))) {
        Ok(p) => p,
        Err(e) => {
            log::debug!("bad request: {e}");
            let id = payload.get(2..10).map_or(0, |b| u64::from_le_bytes(b.try_into().expect("8 bytes")));
            return ScoreResponse::failure(id, Status::BadRequest);
        }
    };
    let (id, poses) = poses;
    match scorer.score_batch(&poses) {
        Ok(scores) if scores.len() == poses.len() && scores.iter().all(|s| (0.0..=1.0).contains(s)) => {
            ScoreResponse::ok(id, scores.iter().map(|&s| s as f32).collect())
        }
        Ok(scores) => {
            log::warn!("scorer broke its contract on request {id} ({} scores for {} poses)", scores.len(), poses.len());
            ScoreResponse::failure(id, Status::ScorerError)
        }
        Err(e) => {
            log::warn!("scorer failed on request {id}: {e}");
            ScoreResponse::failure(id, Status::ScorerError)
        }
    }
}

fn serve_connection(scorer: &dyn Scorer, mut stream: TcpStream) -> io::Result<()> {
    stream.set_nodelay(true)?;
    while let Some(payload) = read_frame(&mut stream)? {
        let response = handle_payload(scorer, &payload);
        write_frame(&mut stream, &response.encode())?;
    }
    Ok(())
}

/// TCP scoring server. Each connection gets its own thread.
pub struct ScoreServer {
    listener: TcpListener,
    scorer: Arc<dyn Scorer>,
}

impl ScoreServer {
    pub fn bind<A: ToSocketAddrs, S: Scorer + 'static>(addr: A, scorer: S) -> io::Result<Self> {
        Ok(ScoreServer {
            listener: TcpListener::bind(addr)?,
            scorer: Arc::new(scorer),
        })
    }

    pub fn local_addr(&self) -> io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    /// Accepts connections forever.
    pub fn run(self) -> io::Result<()> {
        self.accept_loop(&AtomicBool::new(false))
    }

    /// Runs the accept loop on a background thread.
    pub fn spawn(self) -> io::Result<ServerHandle> {
        let addr = self.local_addr()?;
        let stop = Arc::new(AtomicBool::new(false));
        let flag = Arc::clone(&stop);
        let thread = std::thread::Builder::new()
            .name("score-server".into())
            .spawn(move || {
                if let Err(e) = self.accept_loop(&flag) {
                    log::error!("accept loop ended: {e}");
                }
            })?;
        Ok(ServerHandle { addr, stop, thread: Some(thread) })
    }

    fn accept_loop(&self, stop: &AtomicBool) -> io::Result<()> {
        for stream in self.listener.incoming() {
            if stop.load(Ordering::SeqCst) {
                break;
            }
            let stream = match stream {
                Ok(s) => s,
                Err(e) => {
                    log::warn!("accept failed: {e}");
                    continue;
                }
            };
            let peer = stream.peer_addr().ok();
            log::debug!("connection from {peer:?}");
            let scorer = Arc::clone(&self.scorer);
            std::thread::spawn(move || {
                if let Err(e) = serve_connection(scorer.as_ref(), stream) {
                    log::debug!("connection {peer:?} closed: {e}");
                }
            });
        }
        Ok(())
    }
}

/// Handle to a spawned server; shuts it down on drop.
pub struct ServerHandle {
    addr: SocketAddr,
    stop: Arc<AtomicBool>,
    thread: Option<JoinHandle<()>>,
}

impl ServerHandle {
    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    /// Stops accepting new connections. Open connections finish on their own.
    pub fn shutdown(mut self) {
        self.stop_now();
    }

    fn stop_now(&mut self) {
        if let Some(thread) = self.thread.take() {
            self.stop.store(true, Ordering::SeqCst);
            // wake the blocking accept
            let _ = TcpStream::connect(self.addr);
            let _ = thread.join();
        }
    }
}

impl Drop for ServerHandle {
    fn drop(&mut self) {
        self.stop_now();
    }
}

/// Serves `scorer` on `port` of every interface until the process ends.
pub fn serve<S: Scorer + 'static>(scorer: S, port: u16) -> io::Result<()> {
    ScoreServer::bind(("0.0.0.0", port), scorer)?.run()
}

struct Connection {
    stream: TcpStream,
    next_id: u64,
}

/// Client side: a [`Scorer`] that sends each batch as one request.
pub struct RemoteScorer {
    peer: SocketAddr,
    conn: Mutex<Connection>,
}

impl RemoteScorer {
    pub fn connect<A: ToSocketAddrs>(addr: A) -> io::Result<Self> {
        let stream = TcpStream::connect(addr)?;
        stream.set_nodelay(true)?;
        Ok(RemoteScorer {
            peer: stream.peer_addr()?,
            conn: Mutex::new(Connection { stream, next_id: 1 }),
        })
    }

    pub fn peer(&self) -> SocketAddr {
        self.peer
    }

    fn round_trip(conn: &mut Connection, poses: &[CameraPose]) -> Result<ScoreResponse, ScoreError> {
        let id = conn.next_id;
        conn.next_id += 1;
        let transport = |e: io::Error| ScoreError::Transport(e.to_string());
        write_frame(&mut conn.stream, &ScoreRequest::new(id, poses).encode()).map_err(transport)?;
        let payload = read_frame(&mut conn.stream)
            .map_err(transport)?
            .ok_or_else(|| ScoreError::Transport("server closed the connection".into()))?;
        let response = ScoreResponse::decode(&payload).map_err(|e| ScoreError::Transport(e.to_string()))?;
        if response.request_id != id {
            return Err(ScoreError::Transport(format!(
                "response id {} does not match request id {id}",
                response.request_id
            )));
        }
        Ok(response)
    }
}

impl Scorer for RemoteScorer {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        if poses.is_empty() {
            return Err(ScoreError::EmptyBatch);
        }
        let mut conn = self.conn.lock().map_err(|_| ScoreError::Transport("connection lock poisoned".into()))?;
        let response = match Self::round_trip(&mut conn, poses) {
            Ok(r) => r,
            Err(e) => {
                // the stream may be mid-frame; never reuse it
                let _ = conn.stream.shutdown(Shutdown::Both);
                return Err(e);
            }
        };
        if response.status != Status::Ok {
            return Err(ScoreError::Remote { status: response.status as u8 });
        }
        if response.scores.len() != poses.len() {
            return Err(ScoreError::LengthMismatch { expected: poses.len(), got: response.scores.len() });
        }
        Ok(response.scores.iter().map(|&s| s as f64).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scorer::ConstantScorer;

    fn poses(m: usize) -> Vec<CameraPose> {
        crate::geometry::fibonacci_directions(m)
            .unwrap()
            .into_iter()
            .map(|d| CameraPose::new([1.0, 2.0, 3.0], d))
            .collect()
    }

    #[test]
    fn request_layout() {
        let bytes = ScoreRequest::new(42, &poses(2)).encode();
        assert_eq!(bytes.len(), 14 + 2 * 52);
        assert_eq!(&bytes[..2], &[1, 0]);
        assert_eq!(&bytes[2..10], &42u64.to_le_bytes());
        assert_eq!(&bytes[10..14], &2u32.to_le_bytes());
        assert_eq!(&bytes[14..22], &1.0f64.to_le_bytes());
        assert_eq!(&bytes[62..66], &60.0f32.to_le_bytes());
    }

    #[test]
    fn response_layout() {
        let bytes = ScoreResponse::ok(7, vec![0.5, 0.25]).encode();
        assert_eq!(bytes.len(), 15 + 8);
        assert_eq!(bytes[10], 0);
        assert_eq!(&bytes[11..15], &2u32.to_le_bytes());
        assert_eq!(&bytes[15..19], &0.5f32.to_le_bytes());
    }

    #[test]
    fn constant_scene_answers_every_pose() {
        let payload = ScoreRequest::new(42, &poses(15)).encode();
        let r = handle_payload(&ConstantScorer(0.3), &payload);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.request_id, 42);
        assert_eq!(r.scores, vec![0.3f32; 15]);
    }

    #[test]
    fn truncated_payload_is_bad_request() {
        let payload = ScoreRequest::new(9, &poses(15)).encode();
        let r = handle_payload(&ConstantScorer(0.3), &payload[..payload.len() - 5]);
        assert_eq!(r.status, Status::BadRequest);
        assert_eq!(r.request_id, 9);
        assert!(r.scores.is_empty());
        assert_eq!(handle_payload(&ConstantScorer(0.3), &[1]).request_id, 0);
    }

    #[test]
    fn invalid_requests() {
        let mut req = ScoreRequest::new(1, &poses(1));
        req.poses.clear();
        assert_eq!(ScoreRequest::decode(&req.encode()), Err(WireError::EmptyRequest));
        let mut req = ScoreRequest::new(1, &poses(1));
        req.poses[0].direction = [1.0, 1.0, 0.0];
        assert!(matches!(req.camera_poses(), Err(WireError::Pose { index: 0, .. })));
        assert_eq!(handle_payload(&ConstantScorer(0.1), &req.encode()).status, Status::BadRequest);
        let mut bytes = ScoreRequest::new(1, &poses(1)).encode();
        bytes[0] = 2;
        assert_eq!(ScoreRequest::decode(&bytes), Err(WireError::Version(2)));
        bytes[0] = 1;
        bytes.push(0);
        assert_eq!(ScoreRequest::decode(&bytes), Err(WireError::Trailing(1)));
    }

    #[test]
    fn scorer_errors_are_status_two() {
        let payload = ScoreRequest::new(3, &poses(4)).encode();
        assert_eq!(handle_payload(&ConstantScorer(1.5), &payload).status, Status::ScorerError);
    }

    #[test]
    fn frames_round_trip_and_detect_eof() {
        let mut buf = Vec::new();
        write_frame(&mut buf, b"abc").unwrap();
        write_frame(&mut buf, b"").unwrap();
        let mut r = io::Cursor::new(buf);
        assert_eq!(read_frame(&mut r).unwrap().unwrap(), b"abc");
        assert_eq!(read_frame(&mut r).unwrap().unwrap(), b"");
        assert!(read_frame(&mut r).unwrap().is_none());
        let mut partial = io::Cursor::new(vec![5, 0, 0, 0, 1]);
        assert!(read_frame(&mut partial).is_err());
        let mut huge = io::Cursor::new(u32::MAX.to_le_bytes().to_vec());
        assert_eq!(read_frame(&mut huge).unwrap_err().kind(), io::ErrorKind::InvalidData);
    }

    #[test]
    fn loopback_round_trip() {
        let server = ScoreServer::bind("127.0.0.1:0", ConstantScorer(0.3)).unwrap().spawn().unwrap();
        let remote = RemoteScorer::connect(server.addr()).unwrap();
        assert_eq!(remote.score_batch(&poses(15)).unwrap(), vec![0.3f32 as f64; 15]);
        assert_eq!(remote.score_batch(&[]), Err(ScoreError::EmptyBatch));
        assert_eq!(remote.score_batch(&poses(2)).unwrap().len(), 2);
        server.shutdown();
    }
}
