"""
HBG - Replay Transcript Ledger
Hash chain over the verified moves of a replay
"""

import hashlib
import sqlite3
from typing import List, Tuple

GENESIS = "0" * 64


class TranscriptLedger:
    """
    Append-only record of verified moves.  Each entry's digest covers the
    previous digest, the move text and the rendering of the presentation
    the move produced, so editing any of them breaks the chain.
    """

    def __init__(self, db_path: str = ":memory:"):
        self.db_path = db_path
        self.conn = sqlite3.connect(self.db_path, check_same_thread=False)
        self._init_db()

    def _init_db(self):
        cursor = self.conn.cursor()
        cursor.execute('''
            CREATE TABLE IF NOT EXISTS transcript (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                move_index INTEGER NOT NULL,
                move_text TEXT NOT NULL,
                state TEXT NOT NULL,
                previous_hash TEXT NOT NULL,
                current_hash TEXT NOT NULL
            )
        ''')
        self.conn.commit()

    def head(self) -> str:
        cursor = self.conn.cursor()
        cursor.execute('SELECT current_hash FROM transcript ORDER BY id DESC LIMIT 1')
        row = cursor.fetchone()
        return row[0] if row else GENESIS

    @staticmethod
    def calculate_hash(previous_hash: str, move_text: str, state: str) -> str:
        data = f"{previous_hash}\n{move_text}\n{state}"
        return hashlib.sha256(data.encode('utf-8')).hexdigest()

    def log_move(self, move_index: int, move_text: str, state: str) -> str:
        previous_hash = self.head()
        current_hash = self.calculate_hash(previous_hash, move_text, state)

        cursor = self.conn.cursor()
        cursor.execute('''
            INSERT INTO transcript
            (move_index, move_text, state, previous_hash, current_hash)
            VALUES (?, ?, ?, ?, ?)
        ''', (move_index, move_text, state, previous_hash, current_hash))
        self.conn.commit()
        return current_hash

    def entries(self) -> List[Tuple[int, str, str]]:
        cursor = self.conn.cursor()
        cursor.execute('SELECT move_index, move_text, current_hash FROM transcript ORDER BY id ASC')
        return cursor.fetchall()

    def verify_chain(self) -> bool:
        cursor = self.conn.cursor()
        cursor.execute('SELECT move_text, state, previous_hash, current_hash FROM transcript ORDER BY id ASC')

        expected_previous = GENESIS
        for move_text, state, previous_hash, current_hash in cursor.fetchall():
            if previous_hash != expected_previous:
                return False
            if self.calculate_hash(previous_hash, move_text, state) != current_hash:
                return False
            expected_previous = current_hash
        return True

    def close(self):
        self.conn.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
