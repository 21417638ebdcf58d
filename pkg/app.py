from nfilab.cli import cli

if __name__ == "__main__":
    # Point d'entrée : python app.py <commande> [options]
    cli()
