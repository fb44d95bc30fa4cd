"""History / sqlite-based ledger of CLI runs

Stores the command, flags, input digest and final status of each run.
Only used when --history-db or ZNFAL_HISTORY_DB is given; the default
location is ~/.znfal/history.db.
"""
from pathlib import Path
import sqlite3
import json
from datetime import datetime, timezone
from typing import Optional

DEFAULT_DIR = Path.home() / '.znfal'
DEFAULT_DB = DEFAULT_DIR / 'history.db'

SCHEMA = '''
CREATE TABLE IF NOT EXISTS runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    created_at TEXT NOT NULL,
    command TEXT NOT NULL,
    flags TEXT NOT NULL,
    input_digest TEXT,
    status TEXT,
    exit_code INTEGER,
    extra TEXT
);
'''


def _ensure_db(db_path: Optional[Path]):
    db = db_path or DEFAULT_DB
    db.parent.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(str(db))
    conn.execute(SCHEMA)
    conn.commit()
    return conn


def record_run(command: str, flags: dict, input_digest: Optional[str] = None, status: str = 'started', db_path: Optional[str] = None):
    """Insert a run record and return the inserted row id"""
    conn = _ensure_db(Path(db_path) if db_path else None)
    cur = conn.cursor()

    now = datetime.now(timezone.utc).isoformat()
    cur.execute(
        '''INSERT INTO runs (created_at, command, flags, input_digest, status)
           VALUES (?, ?, ?, ?, ?)''',
        (now, command, json.dumps(flags, sort_keys=True, default=str), input_digest, status)
    )
    conn.commit()
    rowid = cur.lastrowid
    conn.close()
    return rowid


def update_run(run_id: int, status: Optional[str] = None, input_digest: Optional[str] = None, exit_code: Optional[int] = None, extra: Optional[dict] = None, db_path: Optional[str] = None):
    conn = _ensure_db(Path(db_path) if db_path else None)
    cur = conn.cursor()
    updates = []
    params = []
    if status is not None:
        updates.append('status = ?')
        params.append(status)
    if input_digest is not None:
        updates.append('input_digest = ?')
        params.append(input_digest)
    if exit_code is not None:
        updates.append('exit_code = ?')
        params.append(exit_code)
    if extra is not None:
        updates.append('extra = ?')
        params.append(json.dumps(extra, sort_keys=True, default=str))
    if not updates:
        conn.close()
        return False
    params.append(run_id)
    cur.execute(f"UPDATE runs SET {', '.join(updates)} WHERE id = ?", params)
    conn.commit()
    conn.close()
    return True


def _row_to_dict(row):
    (id_, created_at, command, flags, input_digest, status, exit_code, extra) = row
    return {
        'id': id_,
        'created_at': created_at,
        'command': command,
        'flags': json.loads(flags),
        'input_digest': input_digest,
        'status': status,
        'exit_code': exit_code,
        'extra': json.loads(extra) if extra else None
    }


def get_run(run_id: int, db_path: Optional[str] = None):
    conn = _ensure_db(Path(db_path) if db_path else None)
    cur = conn.cursor()
    cur.execute('SELECT id, created_at, command, flags, input_digest, status, exit_code, extra FROM runs WHERE id = ?', (run_id,))
    row = cur.fetchone()
    conn.close()
    return _row_to_dict(row) if row else None


def list_runs(limit: int = 20, db_path: Optional[str] = None):
    """Most recent runs first"""
    conn = _ensure_db(Path(db_path) if db_path else None)
    cur = conn.cursor()
    cur.execute('SELECT id, created_at, command, flags, input_digest, status, exit_code, extra FROM runs ORDER BY id DESC LIMIT ?', (limit,))
    rows = cur.fetchall()
    conn.close()
    return [_row_to_dict(row) for row in rows]
