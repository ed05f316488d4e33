"""JSON schemas for states, frames and observables, shared with the CLI.

State object:
  {"N": int, "kind": "fock"|"pure"|"diagonal"|"density",
   "k": int                               (fock)
   "amplitudes_re": [..], "amplitudes_im": [..]   (pure)
   "p": [..]                              (diagonal)
   "rho_re": [[..]], "rho_im": [[..]]     (density)
   "frame": frame object}

Frame object:
  {"kind": "spatial"} | {"kind": "bogolubov", "phi": real}
  | {"kind": "unitary", "u_re": [[..]], "u_im": [[..]]}

Observable object:
  {"N": int, "kind": "jx"|"jy"|"jz"|"jn"|"bose_hubbard",
   "n": [nx, ny, nz]?, "couplings": {"eps1":..,"eps2":..,"U":..,"J":..}?}
"""
from __future__ import annotations

import json

import numpy as np

from .collective import CollectiveObservable, Direction, bose_hubbard, direction_generator, schwinger
from .fock import SectorState, diagonal_state, density_state, make_fock_state, pure_state
from .frames import ModeFrame, bogolubov_frame, custom_frame, spatial_frame

SCHEMA_VERSION = "1"


def frame_to_json(frame: ModeFrame) -> dict:
    if frame.is_spatial:
        return {"kind": "spatial"}
    if frame.label == "bogolubov" and frame.phi is not None:
        return {"kind": "bogolubov", "phi": frame.phi}
    return {
        "kind": "unitary",
        "u_re": frame.mixing.real.tolist(),
        "u_im": frame.mixing.imag.tolist(),
    }


def frame_from_json(obj: dict) -> ModeFrame:
    kind = obj.get("kind")
    if kind == "spatial":
        return spatial_frame()
    if kind == "bogolubov":
        return bogolubov_frame(float(obj["phi"]))
    if kind == "unitary":
        u = np.array(obj["u_re"], dtype=float) + 1j * np.array(obj["u_im"], dtype=float)
        return custom_frame(u)
    raise ValueError(f"unknown frame kind {kind!r}")


def state_to_json(state: SectorState) -> dict:
    obj: dict = {"N": state.n_particles, "frame": frame_to_json(state.frame)}
    if state.amplitudes is not None:
        obj["kind"] = "pure"
        obj["amplitudes_re"] = state.amplitudes.real.tolist()
        obj["amplitudes_im"] = state.amplitudes.imag.tolist()
    else:
        obj["kind"] = "density"
        obj["rho_re"] = state.rho.real.tolist()
        obj["rho_im"] = state.rho.imag.tolist()
    return obj


def state_from_json(obj: dict) -> SectorState:
    big_n = int(obj["N"])
    frame = frame_from_json(obj.get("frame", {"kind": "spatial"}))
    kind = obj.get("kind")
    if kind == "fock":
        return make_fock_state(int(obj["k"]), big_n, frame)
    if kind == "pure":
        c = np.array(obj["amplitudes_re"], dtype=float) + 1j * np.array(obj["amplitudes_im"], dtype=float)
        if c.shape != (big_n + 1,):
            raise ValueError(f"amplitudes must have length N+1 = {big_n + 1}")
        return pure_state(c, frame)
    if kind == "diagonal":
        p = np.array(obj["p"], dtype=float)
        if p.shape != (big_n + 1,):
            raise ValueError(f"p must have length N+1 = {big_n + 1}")
        return diagonal_state(p, frame)
    if kind == "density":
        rho = np.array(obj["rho_re"], dtype=float) + 1j * np.array(obj["rho_im"], dtype=float)
        if rho.shape != (big_n + 1, big_n + 1):
            raise ValueError(f"rho must be (N+1)x(N+1) = {big_n + 1}x{big_n + 1}")
        return density_state(rho, frame)
    raise ValueError(f"unknown state kind {kind!r}")


def observable_from_json(obj: dict) -> CollectiveObservable:
    big_n = int(obj["N"])
    kind = obj.get("kind")
    if kind in ("jx", "jy", "jz"):
        jx, jy, jz = schwinger(big_n)
        return {"jx": jx, "jy": jy, "jz": jz}[kind]
    if kind == "jn":
        nx, ny, nz = (float(x) for x in obj["n"])
        return direction_generator(big_n, Direction(nx, ny, nz))
    if kind == "bose_hubbard":
        c = obj["couplings"]
        return bose_hubbard(big_n, float(c["eps1"]), float(c["eps2"]), float(c["U"]), float(c["J"]))
    raise ValueError(f"unknown observable kind {kind!r}")


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
