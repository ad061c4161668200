from .cli import app

app(prog_name="char2orth")
