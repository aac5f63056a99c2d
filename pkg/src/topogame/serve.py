"""Session service backing the browser client.

One session is one game. Moves within a session are processed strictly in
arrival order (a per-session lock); distinct sessions are independent. An
illegal human move returns the precise error name and leaves the session
unchanged.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import games, representations as rp, serialize as sz, strategies as st
from .cli import parse_space
from .errors import MalformedMove, TopogameError, UnknownGame


class Session:
    def __init__(self, game_id, space, mode, human_role, engine_id, seed):
        self.id = game_id
        self.space = space
        self.mode = mode
        self.human_role = human_role
        self.engine_id = engine_id
        self.seed = seed
        engine_role = games.ALPHA if human_role == games.BETA else games.BETA
        self.engine = st.resolve(engine_id, space, mode, engine_role, seed)
        self.play = games.PartialPlay(mode)
        self.lock = threading.Lock()
        self._rep_fragment = None
        if engine_role == games.BETA:
            # the first player opens the game
            self.play = games.step(self.play, self.engine.respond(self.play),
                                   space)

    def submit(self, move: games.Move) -> dict:
        with self.lock:
            play = games.step(self.play, move, self.space)
            reply = None
            if play.turn != self.human_role:
                reply = self.engine.respond(play)
                play = games.step(play, reply, self.space)
                # in bm/ch the first player also pre-moves the next round
                if (self.human_role == games.ALPHA
                        and play.turn == games.BETA):
                    pass
            self.play = play
            out = self.state()
            if reply is not None:
                out["engine_move"] = games.move_to_obj(reply)
            return out

    def state(self) -> dict:
        cert = None
        if self.play.moves:
            try:
                cert = games.certificate_to_obj(
                    games.build_certificate(self.space, self.play,
                                            self.engine
                                            if self.human_role == games.BETA
                                            else None))
            except TopogameError:
                cert = None
        return {"game_id": self.id,
                "space": sz.space_to_obj(self.space),
                "mode": self.mode,
                "human_role": self.human_role,
                "engine": self.engine_id,
                "turn": self.play.turn,
                "moves": [games.move_to_obj(m) for m in self.play.moves],
                "certificate": cert}

    def transcript_text(self) -> str:
        if not self.play.moves:
            raise MalformedMove("no moves recorded yet")
        alpha_id = (self.engine_id if self.human_role == games.BETA
                    else "human")
        beta_id = (self.engine_id if self.human_role == games.ALPHA
                   else "scripted")
        alpha = self.engine if self.human_role == games.BETA else None
        cert = games.build_certificate(self.space, self.play, alpha)
        t = games.Transcript(self.space, self.mode, alpha_id, beta_id,
                             self.seed, self.play.rounds_played, self.play,
                             cert, rep=getattr(alpha, "rep", None))
        return games.transcript_to_text(t)

    def rep_fragment(self) -> dict:
        with self.lock:
            if self._rep_fragment is None:
                rep = getattr(self.engine, "rep", None)
                if rep is None and self.engine.role == games.ALPHA:
                    rep = rp.compile_rep(self.engine, self.space, self.mode,
                                         depth=2, branching=4)
                if rep is None:
                    raise MalformedMove("no carrier fragment for this engine")
                self._rep_fragment = rp.rep_to_obj(rep)
            return self._rep_fragment


class SessionStore:
    def __init__(self):
        self._sessions: dict = {}
        self._lock = threading.Lock()
        self._next = 0

    def create(self, body: dict) -> Session:
        space = (sz.space_from_obj(body["space"])
                 if isinstance(body["space"], dict)
                 else parse_space(body["space"]))
        mode = body.get("mode", "bm")
        human_role = body.get("human_role", games.BETA)
        engine = body.get("engine",
                          "completeness" if human_role == games.BETA
                          else "random:0")
        seed = int(body.get("seed", 0))
        with self._lock:
            gid = f"g{self._next}"
            self._next += 1
            s = Session(gid, space, mode, human_role, engine, seed)
            self._sessions[gid] = s
            return s

    def get(self, gid: str) -> Session:
        try:
            return self._sessions[gid]
        except KeyError:
            raise UnknownGame(gid) from None


def parse_move(body: dict, role: str) -> games.Move:
    try:
        open_ = sz.element_from_obj(body["open"])
    except (KeyError, TypeError) as e:
        raise MalformedMove(str(e)) from None
    point = sz.point_from_obj(body["point"]) if body.get("point") else None
    return games.Move(role, open_, point)


def make_handler(store: SessionStore, static_dir=None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *a):
            pass

        def _json(self, code: int, obj) -> None:
            data = json.dumps(obj, sort_keys=True).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def _body(self) -> dict:
            n = int(self.headers.get("Content-Length", 0))
            raw = self.rfile.read(n) if n else b"{}"
            try:
                return json.loads(raw)
            except json.JSONDecodeError as e:
                raise MalformedMove(str(e)) from None

        def do_POST(self):
            try:
                parts = self.path.strip("/").split("/")
                if parts == ["games"]:
                    s = store.create(self._body())
                    self._json(200, s.state())
                elif len(parts) == 3 and parts[0] == "games" \
                        and parts[2] == "moves":
                    s = store.get(parts[1])
                    move = parse_move(self._body(), s.human_role)
                    self._json(200, s.submit(move))
                else:
                    self._json(404, {"error": "UnknownGame"})
            except TopogameError as e:
                self._json(400, {"error": e.name, "detail": str(e)})

        def do_GET(self):
            try:
                parts = self.path.strip("/").split("/")
                if len(parts) == 2 and parts[0] == "games":
                    self._json(200, store.get(parts[1]).state())
                elif len(parts) == 3 and parts[0] == "games" \
                        and parts[2] == "transcript":
                    text = store.get(parts[1]).transcript_text().encode()
                    self.send_response(200)
                    self.send_header("Content-Type", "application/json")
                    self.send_header("Access-Control-Allow-Origin", "*")
                    self.send_header("Content-Length", str(len(text)))
                    self.end_headers()
                    self.wfile.write(text)
                elif len(parts) == 3 and parts[0] == "games" \
                        and parts[2] == "rep":
                    self._json(200, store.get(parts[1]).rep_fragment())
                elif static_dir:
                    self._static(parts)
                else:
                    self._json(404, {"error": "UnknownGame"})
            except TopogameError as e:
                code = 404 if e.name == "UnknownGame" else 400
                self._json(code, {"error": e.name, "detail": str(e)})

        def _static(self, parts):
            import os
            rel = "/".join(parts) or "index.html"
            path = os.path.normpath(os.path.join(static_dir, rel))
            if not path.startswith(os.path.abspath(static_dir)) \
                    or not os.path.isfile(path):
                self._json(404, {"error": "UnknownGame"})
                return
            ctype = {"html": "text/html", "js": "text/javascript",
                     "css": "text/css"}.get(path.rsplit(".", 1)[-1],
                                            "application/octet-stream")
            with open(path, "rb") as f:
                data = f.read()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

    return Handler


def make_server(port: int, static_dir=None) -> ThreadingHTTPServer:
    store = SessionStore()
    if static_dir:
        import os
        static_dir = os.path.abspath(static_dir)
    return ThreadingHTTPServer(("127.0.0.1", port),
                               make_handler(store, static_dir))


def run_server(port: int, static_dir=None) -> None:
    srv = make_server(port, static_dir)
    print(f"serving on http://127.0.0.1:{port}")
    try:
        srv.serve_forever()
    except KeyboardInterrupt:
        pass
