int cwe401_ok_freed_m_main(int c) {
  char *p = malloc(16);
  p[0] = 1;
  free(p);
  return 0;
}
