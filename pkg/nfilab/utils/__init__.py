# Utilitaires : union-find, format de fichier, générateurs, rapports
